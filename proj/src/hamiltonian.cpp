#include "symvqe/hamiltonian.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <regex>
#include <sstream>

#include "symvqe/point_group.hpp"

namespace symvqe {

IntegralSet::IntegralSet(int n, int n_elec)
    : n_spatial(n),
      n_electrons(n_elec),
      h1(Eigen::MatrixXd::Zero(n, n)),
      h2(static_cast<std::size_t>(n) * n * n * n, 0.0) {}

void IntegralSet::set_eri(int p, int q, int r, int s, double v) {
  eri(p, q, r, s) = v;
  eri(q, p, r, s) = v;
  eri(p, q, s, r) = v;
  eri(q, p, s, r) = v;
  eri(r, s, p, q) = v;
  eri(s, r, p, q) = v;
  eri(r, s, q, p) = v;
  eri(s, r, q, p) = v;
}

namespace {

std::map<std::string, std::vector<std::string>> parse_namelist(std::string header) {
  header = std::regex_replace(header, std::regex(R"(\s*=\s*)"), "=");
  std::replace(header.begin(), header.end(), ',', ' ');
  std::istringstream in(header);
  std::map<std::string, std::vector<std::string>> out;
  std::string token, key;
  while (in >> token) {
    if (token == "&FCI" || token == "&END" || token == "/" || token == "$END") continue;
    const auto eq = token.find('=');
    if (eq != std::string::npos) {
      key = token.substr(0, eq);
      std::transform(key.begin(), key.end(), key.begin(), ::toupper);
      out[key];
      if (eq + 1 < token.size()) out[key].push_back(token.substr(eq + 1));
    } else if (!key.empty()) {
      out[key].push_back(token);
    } else {
      throw FcidumpError("FCIDUMP: unexpected header token '" + token + "'");
    }
  }
  return out;
}

int header_int(const std::map<std::string, std::vector<std::string>>& nl, const std::string& key, bool required,
               int fallback = 0) {
  auto it = nl.find(key);
  if (it == nl.end() || it->second.empty()) {
    if (required) throw FcidumpError("FCIDUMP: header lacks " + key);
    return fallback;
  }
  try {
    return std::stoi(it->second.front());
  } catch (const std::exception&) {
    throw FcidumpError("FCIDUMP: bad value for " + key);
  }
}

double parse_value(std::string s) {
  std::replace(s.begin(), s.end(), 'D', 'E');
  std::replace(s.begin(), s.end(), 'd', 'e');
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size()) throw FcidumpError("FCIDUMP: bad number '" + s + "'");
  return v;
}

std::string shortest(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

IntegralSet parse_fcidump(const std::string& text) {
  const auto end_pos = [&] {
    std::smatch m;
    if (std::regex_search(text, m, std::regex(R"((&END|\$END|^\s*/\s*$))", std::regex::multiline)))
      return static_cast<std::size_t>(m.position(0) + m.length(0));
    throw FcidumpError("FCIDUMP: header is not terminated by &END or /");
  }();
  const auto start = text.find("&FCI");
  if (start == std::string::npos || start > end_pos) throw FcidumpError("FCIDUMP: missing &FCI header");
  const auto nl = parse_namelist(text.substr(start, end_pos - start));

  const int norb = header_int(nl, "NORB", true);
  if (norb <= 0) throw FcidumpError("FCIDUMP: NORB must be positive");
  IntegralSet ints(norb, header_int(nl, "NELEC", true));
  ints.ms2 = header_int(nl, "MS2", false);
  if (auto it = nl.find("ORBSYM"); it != nl.end()) {
    for (const auto& s : it->second) ints.orbsym.push_back(std::stoi(s));
    if (static_cast<int>(ints.orbsym.size()) != norb) throw FcidumpError("FCIDUMP: ORBSYM length differs from NORB");
  }

  std::vector<char> seen2(ints.h2.size(), 0);
  Eigen::MatrixXi seen1 = Eigen::MatrixXi::Zero(norb, norb);
  auto check = [](double old, double v, bool was_set, const std::string& where) {
    if (was_set && std::abs(old - v) > 1e-10)
      throw FcidumpError("FCIDUMP: permutation-symmetric entries disagree at " + where);
  };

  std::istringstream body(text.substr(end_pos));
  std::string line;
  int line_no = 0;
  while (std::getline(body, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string vs;
    if (!(ls >> vs)) continue;
    int idx[4];
    for (int& k : idx)
      if (!(ls >> k)) throw FcidumpError("FCIDUMP: malformed data line " + std::to_string(line_no) + ": " + line);
    const double v = parse_value(vs);
    for (int k : idx)
      if (k < 0 || k > norb) throw FcidumpError("FCIDUMP: index out of range on data line " + std::to_string(line_no));
    const int p = idx[0] - 1, q = idx[1] - 1, r = idx[2] - 1, s = idx[3] - 1;
    const std::string where = "line " + std::to_string(line_no);
    if (idx[0] == 0 && idx[1] == 0 && idx[2] == 0 && idx[3] == 0) {
      ints.e_core = v;
    } else if (idx[2] == 0 && idx[3] == 0) {
      if (idx[1] == 0) continue;  // orbital energy
      if (idx[0] == 0) throw FcidumpError("FCIDUMP: malformed index pattern at " + where);
      check(ints.h1(p, q), v, seen1(p, q), where);
      ints.h1(p, q) = ints.h1(q, p) = v;
      seen1(p, q) = seen1(q, p) = 1;
    } else {
      if (idx[0] == 0 || idx[1] == 0 || idx[2] == 0 || idx[3] == 0)
        throw FcidumpError("FCIDUMP: malformed index pattern at " + where);
      const std::array<std::array<int, 4>, 8> partners{{{p, q, r, s},
                                                        {q, p, r, s},
                                                        {p, q, s, r},
                                                        {q, p, s, r},
                                                        {r, s, p, q},
                                                        {s, r, p, q},
                                                        {r, s, q, p},
                                                        {s, r, q, p}}};
      for (const auto& t : partners) {
        const auto flat = ((static_cast<std::size_t>(t[0]) * norb + t[1]) * norb + t[2]) * norb + t[3];
        check(ints.h2[flat], v, seen2[flat], where);
        ints.h2[flat] = v;
        seen2[flat] = 1;
      }
    }
  }
  return ints;
}

IntegralSet read_fcidump(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FcidumpError("cannot open FCIDUMP " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_fcidump(ss.str());
}

std::string fcidump_to_string(const IntegralSet& ints) {
  std::ostringstream out;
  const int n = ints.n_spatial;
  out << "&FCI NORB=" << n << ",NELEC=" << ints.n_electrons << ",MS2=" << ints.ms2 << ",\n";
  if (!ints.orbsym.empty()) {
    out << " ORBSYM=";
    for (int s : ints.orbsym) out << s << ",";
    out << "\n";
  }
  out << " ISYM=1,\n &END\n";
  auto line = [&](double v, int p, int q, int r, int s) {
    out << shortest(v) << ' ' << p << ' ' << q << ' ' << r << ' ' << s << '\n';
  };
  for (int p = 0; p < n; ++p)
    for (int q = 0; q <= p; ++q)
      for (int r = 0; r < n; ++r)
        for (int s = 0; s <= r; ++s) {
          if (p * (p + 1) / 2 + q < r * (r + 1) / 2 + s) continue;
          const double v = ints.eri(p, q, r, s);
          if (v != 0.0) line(v, p + 1, q + 1, r + 1, s + 1);
        }
  for (int p = 0; p < n; ++p)
    for (int q = 0; q <= p; ++q)
      if (ints.h1(p, q) != 0.0) line(ints.h1(p, q), p + 1, q + 1, 0, 0);
  line(ints.e_core, 0, 0, 0, 0);
  return out.str();
}

void write_fcidump(const IntegralSet& ints, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw FcidumpError("cannot write FCIDUMP " + path);
  out << fcidump_to_string(ints);
}

MolecularHamiltonian build_hamiltonian(const IntegralSet& ints) {
  const int n = ints.n_spatial;
  MolecularHamiltonian h;
  h.e_core = ints.e_core;
  h.n_electrons = ints.n_electrons;
  h.n_modes = 2 * n;
  auto so = OrbitalBasis::spin_orbital;
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      if (ints.h1(p, q) != 0.0)
        for (int sigma = 0; sigma < 2; ++sigma) h.op += FermionOperator::excitation(so(p, sigma), so(q, sigma), ints.h1(p, q));
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) {
          const double v = ints.eri(p, r, q, s);
          if (v == 0.0) continue;
          for (int sigma = 0; sigma < 2; ++sigma)
            for (int tau = 0; tau < 2; ++tau) {
              const int ps = so(p, sigma), qt = so(q, tau), st = so(s, tau), rs = so(r, sigma);
              if (ps == qt || st == rs) continue;
              h.op += FermionOperator::product({cre(ps), cre(qt), ann(st), ann(rs)}, 0.5 * v);
            }
        }
  return h;
}

Eigen::MatrixXd prism_hopping(double t_intra, double t_inter) {
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(6, 6);
  for (int ring = 0; ring < 2; ++ring)
    for (int k = 0; k < 3; ++k) {
      const int a = 3 * ring + k, b = 3 * ring + (k + 1) % 3;
      h(a, b) = h(b, a) = -t_intra;
    }
  for (int k = 0; k < 3; ++k) h(k, k + 3) = h(k + 3, k) = -t_inter;
  return h;
}

PrismModel build_prism_model(double t_intra, double t_inter, double u) {
  if (!(t_intra > 0.0)) throw std::invalid_argument("prism: t_intra must be positive");
  const Eigen::MatrixXd hop = prism_hopping(t_intra, t_inter);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(hop);
  const Eigen::VectorXd& w = es.eigenvalues();
  const Eigen::MatrixXd& v = es.eigenvectors();

  // site permutations: C3 sends site k to k+1 within each ring, sigma_v swaps 1<->2 and 4<->5
  Eigen::MatrixXd c3 = Eigen::MatrixXd::Zero(6, 6), sigma = Eigen::MatrixXd::Zero(6, 6);
  for (int ring = 0; ring < 2; ++ring)
    for (int k = 0; k < 3; ++k) {
      c3(3 * ring + (k + 1) % 3, 3 * ring + k) = 1.0;
      sigma(3 * ring + (3 - k) % 3, 3 * ring + k) = 1.0;
    }

  auto fix_sign = [](Eigen::VectorXd x) {
    for (int k = 0; k < x.size(); ++k)
      if (std::abs(x(k)) > 1e-8) return x(k) < 0 ? Eigen::VectorXd(-x) : x;
    return x;
  };

  Eigen::MatrixXd mo = Eigen::MatrixXd::Zero(6, 6);
  std::vector<double> energies;
  std::vector<OrbitalShell> shells;
  std::vector<std::string> h_labels;
  int col = 0;
  for (int start = 0; start < 6;) {
    int end = start + 1;
    while (end < 6 && std::abs(w(end) - w(start)) < 1e-8) ++end;
    const int d = end - start;
    const Eigen::MatrixXd block = v.middleCols(start, d);
    const double e = w(start);
    if (d == 1) {
      const Eigen::VectorXd x = fix_sign(block.col(0));
      if ((c3 * x - x).norm() > 1e-8 || (sigma * x - x).norm() > 1e-8)
        throw std::invalid_argument("prism: nondegenerate level is not totally symmetric");
      mo.col(col) = x;
      shells.push_back({"A1", 0, {col}, e});
      h_labels.push_back("A'");
      energies.push_back(e);
      ++col;
    } else if (d == 2) {
      const Eigen::MatrixXd even = 0.5 * (Eigen::MatrixXd::Identity(6, 6) + sigma) * block;
      const Eigen::MatrixXd odd = 0.5 * (Eigen::MatrixXd::Identity(6, 6) - sigma) * block;
      Eigen::Index ie, io;
      even.colwise().norm().maxCoeff(&ie);
      odd.colwise().norm().maxCoeff(&io);
      const Eigen::VectorXd x = fix_sign(even.col(ie).normalized());
      Eigen::VectorXd y = odd.col(io).normalized();
      if (y.dot(c3 * x) < 0) y = -y;
      mo.col(col) = x;
      mo.col(col + 1) = y;
      shells.push_back({"E", 0, {col, col + 1}, e});
      h_labels.push_back("A'");
      h_labels.push_back("A''");
      energies.push_back(e);
      energies.push_back(e);
      col += 2;
    } else {
      throw std::invalid_argument(
          "prism: accidental degeneracy of an A1 and an E level (|t_inter| = 1.5 t_intra); choose other hoppings");
    }
    start = end;
  }
  std::map<std::string, int> counter;
  for (auto& s : shells) s.shell_index = ++counter[s.irrep];

  IntegralSet ints(6, 6);
  ints.h1 = mo.transpose() * hop * mo;
  for (int p = 0; p < 6; ++p)
    for (int q = 0; q < 6; ++q)
      for (int r = 0; r < 6; ++r)
        for (int s = 0; s < 6; ++s) {
          double acc = 0.0;
          for (int k = 0; k < 6; ++k) acc += mo(k, p) * mo(k, q) * mo(k, r) * mo(k, s);
          ints.eri(p, q, r, s) = u * acc;
        }
  try {
    return PrismModel{std::move(ints), partition(OrbitalBasis(shells, h_labels), 6), mo, energies};
  } catch (const PartitionError&) {
    throw std::invalid_argument(
        "prism: at 6 electrons the Fermi level splits an E level; the occupied E level needs "
        "t_inter > 1.5 t_intra (for example 1.0,2.0,u)");
  }
}

std::vector<SelectionViolation> check_selection_rules(const IntegralSet& ints, const OrbitalBasis& basis,
                                                      const SubgroupSpec& h, double threshold) {
  const int n = ints.n_spatial;
  if (basis.n_spatial() != n) throw std::invalid_argument("check_selection_rules: basis size differs from integrals");
  std::vector<SelectionViolation> out;
  auto lab = [&](int p) { return basis.h_label(p); };
  for (int p = 0; p < n; ++p)
    for (int q = 0; q <= p; ++q)
      if (std::abs(ints.h1(p, q)) > threshold && !h.is_trivial({lab(p), lab(q)}, {true, false}))
        out.push_back({{p, q}, ints.h1(p, q)});
  for (int p = 0; p < n; ++p)
    for (int q = 0; q <= p; ++q)
      for (int r = 0; r < n; ++r)
        for (int s = 0; s <= r; ++s) {
          if (p * (p + 1) / 2 + q < r * (r + 1) / 2 + s) continue;
          const double v = ints.eri(p, q, r, s);
          if (std::abs(v) > threshold && !h.is_trivial({lab(p), lab(q), lab(r), lab(s)}, {true, false, true, false}))
            out.push_back({{p, q, r, s}, v});
        }
  return out;
}

IntegralSet transform_integrals(const IntegralSet& ints, const Eigen::MatrixXd& c) {
  const int n = ints.n_spatial;
  if (c.rows() != n || c.cols() != n) throw std::invalid_argument("transform_integrals: matrix has the wrong size");
  if ((c.transpose() * c - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument("transform_integrals: matrix is not orthogonal");
  IntegralSet out = ints;
  out.h1 = c.transpose() * ints.h1 * c;
  const std::size_t n2 = static_cast<std::size_t>(n) * n;
  // four quarter transformations, each contracting the leading index and rotating it to the back
  std::vector<double> a = ints.h2, b(a.size());
  for (int pass = 0; pass < 4; ++pass) {
    for (int p = 0; p < n; ++p)
      for (std::size_t rest = 0; rest < n2 * n; ++rest) {
        double acc = 0.0;
        for (int k = 0; k < n; ++k) acc += c(k, p) * a[static_cast<std::size_t>(k) * n2 * n + rest];
        b[rest * n + p] = acc;
      }
    std::swap(a, b);
  }
  out.h2 = std::move(a);
  return out;
}

IntegralSet rotate_degenerate_shells(const IntegralSet& ints, const OrbitalShell& shell, const Eigen::MatrixXd& u) {
  const int d = shell.dim();
  if (u.rows() != d || u.cols() != d) throw std::invalid_argument("rotate_degenerate_shells: matrix size differs from shell");
  if ((u.transpose() * u - Eigen::MatrixXd::Identity(d, d)).cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument("rotate_degenerate_shells: supplied matrix is not orthogonal");
  Eigen::MatrixXd c = Eigen::MatrixXd::Identity(ints.n_spatial, ints.n_spatial);
  for (int nu = 0; nu < d; ++nu)
    for (int mu = 0; mu < d; ++mu) c(shell.components[nu], shell.components[mu]) = u(nu, mu);
  return transform_integrals(ints, c);
}

IntegralSet rotate_degenerate_shells(const IntegralSet& ints, const OrbitalShell& shell, double angle) {
  if (shell.dim() != 2) throw std::invalid_argument("rotate_degenerate_shells: angle form needs a two-component shell");
  Eigen::Matrix2d u;
  u << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
  return rotate_degenerate_shells(ints, shell, Eigen::MatrixXd(u));
}

}  // namespace symvqe
