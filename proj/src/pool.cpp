#include "symvqe/pool.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include "symvqe/hamiltonian.hpp"
#include "symvqe/point_group.hpp"

namespace symvqe {

namespace {

using Key = std::tuple<ExcitationKind, std::vector<int>, std::vector<int>>;

Key key_of(const ExcitationClass& c) { return {c.kind, c.occ, c.vir}; }

ExcitationClass make_single(int i, int a) {
  ExcitationClass c;
  c.kind = ExcitationKind::single;
  c.occ = {i};
  c.vir = {a};
  FermionOperator sum;
  for (int s = 0; s < 2; ++s) {
    const int io = OrbitalBasis::spin_orbital(i, s), ao = OrbitalBasis::spin_orbital(a, s);
    Excitation e{ExcitationKind::single, {io}, {ao}, FermionOperator::excitation(ao, io)};
    sum += e.t;
    c.members.push_back(std::move(e));
  }
  c.generator = Generator::from_excitation(sum);
  return c;
}

ExcitationClass make_double(std::pair<int, int> p, std::pair<int, int> q) {
  ExcitationClass c;
  c.kind = ExcitationKind::double_;
  c.occ = {p.first, q.first};
  c.vir = {p.second, q.second};
  const bool paired = p == q;
  FermionOperator sum;
  for (int sa = 0; sa < 2; ++sa)
    for (int sb = 0; sb < 2; ++sb) {
      if (paired && !(sa == 0 && sb == 1)) continue;
      const int i = OrbitalBasis::spin_orbital(p.first, sa), a = OrbitalBasis::spin_orbital(p.second, sa);
      const int j = OrbitalBasis::spin_orbital(q.first, sb), b = OrbitalBasis::spin_orbital(q.second, sb);
      if (a == b || i == j) continue;
      Excitation e{ExcitationKind::double_, {i, j}, {a, b}, FermionOperator::product({cre(a), ann(i), cre(b), ann(j)})};
      sum += e.t;
      c.members.push_back(std::move(e));
    }
  c.generator = Generator::from_excitation(sum);
  return c;
}

}  // namespace

std::string ExcitationClass::name() const {
  std::ostringstream out;
  if (kind == ExcitationKind::single) {
    out << "S " << occ[0] << "->" << vir[0];
  } else {
    out << "D " << occ[0] << "->" << vir[0] << "," << occ[1] << "->" << vir[1];
  }
  return out.str();
}

bool Pool::contains(const ExcitationClass& c) const { return std::find(classes.begin(), classes.end(), c) != classes.end(); }

Pool generate_uccsd(const OrbitalBasis& basis) {
  std::vector<std::pair<int, int>> singles;
  for (int i : basis.occupied_orbitals())
    for (int a : basis.virtual_orbitals()) singles.emplace_back(i, a);
  Pool pool;
  for (const auto& [i, a] : singles) pool.classes.push_back(make_single(i, a));
  for (const auto& p : singles) pool.classes.push_back(make_double(p, p));
  for (std::size_t x = 0; x < singles.size(); ++x)
    for (std::size_t y = x + 1; y < singles.size(); ++y) pool.classes.push_back(make_double(singles[x], singles[y]));
  return pool;
}

bool abelian_allowed(const ExcitationClass& c, const OrbitalBasis& basis, const SubgroupSpec& h) {
  std::vector<std::string> labels;
  std::vector<bool> inverse;
  for (std::size_t k = 0; k < c.occ.size(); ++k) {
    labels.push_back(basis.h_label(c.vir[k]));
    inverse.push_back(false);
    labels.push_back(basis.h_label(c.occ[k]));
    inverse.push_back(true);
  }
  return h.is_trivial(labels, inverse);
}

Pool filter_abelian(const Pool& p, const OrbitalBasis& basis, const SubgroupSpec& h) {
  Pool out;
  out.filter_tag = "abelian(" + h.name + ")";
  for (const auto& c : p.classes)
    if (abelian_allowed(c, basis, h)) out.classes.push_back(c);
  return out;
}

bool equivariant_allowed(const ExcitationClass& c, const OrbitalBasis& basis, const GroupSpec& g) {
  if (c.kind == ExcitationKind::single) return basis.g_irrep(c.vir[0]) == basis.g_irrep(c.occ[0]);
  std::vector<IrrepFactor> factors;
  for (std::size_t k = 0; k < c.occ.size(); ++k) {
    factors.push_back({basis.g_irrep(c.vir[k]), false});
    factors.push_back({basis.g_irrep(c.occ[k]), true});
  }
  return a1_multiplicity(g, factors) > 0;
}

Pool filter_equivariant(const Pool& p, const OrbitalBasis& basis, const GroupSpec& g) {
  Pool out;
  out.filter_tag = "equivariant(" + g.name() + ")";
  for (const auto& c : p.classes)
    if (equivariant_allowed(c, basis, g)) out.classes.push_back(c);
  return out;
}

double integral_magnitude(const ExcitationClass& c, const IntegralSet& ints) {
  if (c.kind == ExcitationKind::single) return std::abs(ints.h1(c.vir[0], c.occ[0]));
  double best = 0.0;
  for (const auto& m : c.members) {
    const int i = m.occ[0] / 2, j = m.occ[1] / 2, a = m.vir[0] / 2, b = m.vir[1] / 2;
    const bool same_spin = m.occ[0] % 2 == m.occ[1] % 2;
    double v = ints.eri(a, i, b, j);
    if (same_spin) v -= ints.eri(a, j, b, i);
    best = std::max(best, std::abs(v));
  }
  return best;
}

Pool filter_integral(const Pool& p, const IntegralSet& ints, double epsilon) {
  Pool out;
  std::ostringstream tag;
  tag << "integral(" << epsilon << ")";
  out.filter_tag = tag.str();
  for (const auto& c : p.classes)
    if (integral_magnitude(c, ints) > epsilon) out.classes.push_back(c);
  return out;
}

std::vector<DeficitRow> deficit_report(const Pool& full, const Pool& filtered, const OrbitalBasis& basis,
                                       const GroupSpec* g, const SubgroupSpec* h) {
  std::set<Key> kept, present;
  for (const auto& c : filtered.classes) kept.insert(key_of(c));
  for (const auto& c : full.classes) present.insert(key_of(c));

  // mixed doubles are stored with P before Q in the single ordering (i, a) lexicographic
  auto double_key = [](std::pair<int, int> p, std::pair<int, int> q) -> Key {
    if (q < p) std::swap(p, q);
    return {ExcitationKind::double_, {p.first, q.first}, {p.second, q.second}};
  };

  std::vector<DeficitRow> rows;
  const auto& shells = basis.shells();
  for (std::size_t so = 0; so < shells.size(); ++so) {
    if (!basis.shell_occupied(static_cast<int>(so)) || shells[so].dim() < 2) continue;
    for (std::size_t sv = 0; sv < shells.size(); ++sv) {
      if (basis.shell_occupied(static_cast<int>(sv)) || shells[sv].irrep != shells[so].irrep) continue;
      const int d = shells[so].dim();
      std::vector<std::pair<int, int>> singles;
      for (int i : shells[so].components)
        for (int a : shells[sv].components) singles.emplace_back(i, a);

      DeficitRow srow{shells[so].irrep, static_cast<int>(so), static_cast<int>(sv), ExcitationKind::single};
      for (const auto& [i, a] : singles) {
        const Key k{ExcitationKind::single, {i}, {a}};
        if (!present.count(k)) continue;
        ++srow.total;
        (kept.count(k) ? srow.retained : srow.discarded)++;
      }
      srow.expected_deficit = d * (d - 1);

      DeficitRow drow{shells[so].irrep, static_cast<int>(so), static_cast<int>(sv), ExcitationKind::double_};
      for (const auto& p : singles)
        for (const auto& q : singles) {
          const Key k = double_key(p, q);
          if (!present.count(k)) continue;
          ++drow.total;
          (kept.count(k) ? drow.retained : drow.discarded)++;
        }
      if (g && h) {
        // tuples with trivial label product: (1/|H|) Σ_h |χ(h)|⁴
        const auto& ir = g->irrep(shells[so].irrep);
        double acc = 0.0;
        for (auto e : h->element_indices) acc += std::pow(std::abs(ir.character(e)), 4);
        const int retained = static_cast<int>(std::lround(acc / static_cast<double>(h->element_indices.size())));
        drow.expected_deficit = d * d * d * d - retained;
      }
      rows.push_back(srow);
      rows.push_back(drow);
    }
  }
  return rows;
}

std::string deficit_report_tsv(const std::vector<DeficitRow>& rows, const OrbitalBasis& basis) {
  std::ostringstream out;
  out << "irrep\tshell_pair\tkind\tretained\tdiscarded\texpected_deficit\n";
  for (const auto& r : rows) {
    const auto& so = basis.shells()[r.occ_shell];
    const auto& sv = basis.shells()[r.vir_shell];
    out << r.irrep << '\t' << so.shell_index << so.irrep << "->" << sv.shell_index << sv.irrep << '\t'
        << (r.kind == ExcitationKind::single ? "single" : "double") << '\t' << r.retained << '\t' << r.discarded
        << '\t';
    if (r.expected_deficit >= 0)
      out << r.expected_deficit;
    else
      out << "NA";
    out << '\n';
  }
  return out.str();
}

}  // namespace symvqe
