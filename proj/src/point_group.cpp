#include "symvqe/point_group.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "symvqe/orbital_space.hpp"

namespace symvqe {

namespace {

constexpr double kGroupTol = 1e-12;
constexpr double kCharTol = 1e-9;

bool same_characters(const std::vector<Complex>& a, const std::vector<Complex>& b, double tol) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::abs(a[i] - b[i]) > tol) return false;
  return true;
}

}  // namespace

const SubgroupIrrep& SubgroupSpec::irrep(const std::string& label) const {
  for (const auto& ir : irreps)
    if (ir.label == label) return ir;
  throw std::out_of_range("subgroup " + name + " has no irrep '" + label + "'");
}

std::string SubgroupSpec::product(const std::vector<std::string>& labels, const std::vector<bool>& inverse) const {
  std::vector<Complex> chi(element_indices.size(), Complex{1.0});
  for (std::size_t k = 0; k < labels.size(); ++k) {
    const auto& ir = irrep(labels[k]);
    const bool inv = k < inverse.size() && inverse[k];
    for (std::size_t h = 0; h < chi.size(); ++h) chi[h] *= inv ? std::conj(ir.characters[h]) : ir.characters[h];
  }
  for (const auto& ir : irreps)
    if (same_characters(chi, ir.characters, kCharTol)) return ir.label;
  throw std::logic_error("subgroup " + name + ": character product matches no irrep");
}

GroupSpec::GroupSpec(std::string name, std::vector<std::string> elements,
                     std::vector<std::vector<std::size_t>> mult_table, std::vector<IrrepSpec> irreps,
                     std::vector<SubgroupSpec> subgroups)
    : name_(std::move(name)),
      elements_(std::move(elements)),
      mult_table_(std::move(mult_table)),
      irreps_(std::move(irreps)),
      subgroups_(std::move(subgroups)) {
  validate();
}

void GroupSpec::validate() {
  const std::size_t n = elements_.size();
  auto fail = [this](const std::string& why) { throw GroupValidationError("group " + name_ + ": " + why); };
  if (n == 0) fail("no elements");
  if (mult_table_.size() != n) fail("multiplication table has wrong row count");
  for (const auto& row : mult_table_) {
    if (row.size() != n) fail("multiplication table has wrong column count");
    for (auto v : row)
      if (v >= n) fail("multiplication table entry out of range");
  }
  // identity
  bool found = false;
  for (std::size_t e = 0; e < n && !found; ++e) {
    bool ok = true;
    for (std::size_t g = 0; g < n && ok; ++g) ok = mult_table_[e][g] == g && mult_table_[g][e] == g;
    if (ok) {
      identity_ = e;
      found = true;
    }
  }
  if (!found) fail("no identity element");
  inverse_.assign(n, n);
  for (std::size_t g = 0; g < n; ++g) {
    for (std::size_t h = 0; h < n; ++h)
      if (mult_table_[g][h] == identity_ && mult_table_[h][g] == identity_) inverse_[g] = h;
    if (inverse_[g] == n) fail("element " + elements_[g] + " has no inverse");
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (mult_table_[mult_table_[a][b]][c] != mult_table_[a][mult_table_[b][c]]) fail("not associative");

  std::size_t dim_sum = 0;
  for (const auto& ir : irreps_) {
    if (ir.dim < 1) fail("irrep " + ir.label + " has non-positive dimension");
    if (ir.matrices.size() != n) fail("irrep " + ir.label + " needs one matrix per element");
    for (const auto& m : ir.matrices) {
      if (m.rows() != ir.dim || m.cols() != ir.dim) fail("irrep " + ir.label + " matrix has wrong shape");
      const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(ir.dim, ir.dim);
      if ((m.adjoint() * m - id).cwiseAbs().maxCoeff() > kGroupTol) fail("irrep " + ir.label + " is not unitary");
    }
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if ((ir.matrices[a] * ir.matrices[b] - ir.matrices[mult_table_[a][b]]).cwiseAbs().maxCoeff() > kGroupTol)
          fail("irrep " + ir.label + " is not a homomorphism");
    dim_sum += static_cast<std::size_t>(ir.dim * ir.dim);
  }
  if (dim_sum != n) fail("sum of squared irrep dimensions differs from the group order");
  for (std::size_t l = 0; l < irreps_.size(); ++l) {
    for (std::size_t m = 0; m < irreps_.size(); ++m) {
      Complex s{};
      for (std::size_t g = 0; g < n; ++g) s += irreps_[l].character(g) * std::conj(irreps_[m].character(g));
      s /= static_cast<double>(n);
      if (std::abs(s - Complex(l == m ? 1.0 : 0.0)) > kGroupTol) fail("character orthogonality violated");
    }
  }

  for (const auto& h : subgroups_) {
    const std::size_t k = h.element_indices.size();
    auto contains = [&](std::size_t e) {
      return std::find(h.element_indices.begin(), h.element_indices.end(), e) != h.element_indices.end();
    };
    for (auto a : h.element_indices) {
      if (a >= n) fail("subgroup " + h.name + " element out of range");
      for (auto b : h.element_indices) {
        if (!contains(mult_table_[a][b])) fail("subgroup " + h.name + " not closed");
        if (mult_table_[a][b] != mult_table_[b][a]) fail("subgroup " + h.name + " is not Abelian");
      }
    }
    if (h.irreps.size() != k) fail("subgroup " + h.name + " needs |H| one-dimensional irreps");
    bool trivial_ok = false;
    for (const auto& ir : h.irreps) {
      if (ir.characters.size() != k) fail("subgroup irrep " + ir.label + " has wrong character count");
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
          const std::size_t prod = mult_table_[h.element_indices[i]][h.element_indices[j]];
          const auto pos = static_cast<std::size_t>(
              std::find(h.element_indices.begin(), h.element_indices.end(), prod) - h.element_indices.begin());
          if (std::abs(ir.characters[i] * ir.characters[j] - ir.characters[pos]) > kGroupTol)
            fail("subgroup irrep " + ir.label + " is not a character");
        }
      }
      if (ir.label == h.trivial_label) {
        for (auto c : ir.characters)
          if (std::abs(c - Complex(1.0)) > kGroupTol) fail("trivial irrep of " + h.name + " is not trivial");
        trivial_ok = true;
      }
    }
    for (std::size_t i = 0; i < h.irreps.size(); ++i)
      for (std::size_t j = i + 1; j < h.irreps.size(); ++j)
        if (same_characters(h.irreps[i].characters, h.irreps[j].characters, kCharTol))
          fail("subgroup " + h.name + " repeats an irrep");
    if (!trivial_ok) fail("subgroup " + h.name + " lacks its trivial irrep");
  }
}

std::size_t GroupSpec::element_index(const std::string& name) const {
  auto it = std::find(elements_.begin(), elements_.end(), name);
  if (it == elements_.end()) throw std::out_of_range("group " + name_ + " has no element '" + name + "'");
  return static_cast<std::size_t>(it - elements_.begin());
}

const IrrepSpec& GroupSpec::irrep(const std::string& label) const {
  for (const auto& ir : irreps_)
    if (ir.label == label) return ir;
  throw std::out_of_range("group " + name_ + " has no irrep '" + label + "'");
}

bool GroupSpec::has_irrep(const std::string& label) const {
  return std::any_of(irreps_.begin(), irreps_.end(), [&](const IrrepSpec& ir) { return ir.label == label; });
}

const SubgroupSpec& GroupSpec::subgroup(const std::string& name) const {
  for (const auto& h : subgroups_)
    if (h.name == name) return h;
  throw std::out_of_range("group " + name_ + " has no subgroup '" + name + "'");
}

bool GroupSpec::is_abelian() const {
  return std::all_of(irreps_.begin(), irreps_.end(), [](const IrrepSpec& ir) { return ir.dim == 1; });
}

SubgroupSpec GroupSpec::as_subgroup() const {
  if (!is_abelian()) throw std::logic_error("group " + name_ + " is not Abelian");
  SubgroupSpec h;
  h.name = name_;
  h.parent = name_;
  for (std::size_t g = 0; g < order(); ++g) h.element_indices.push_back(g);
  for (const auto& ir : irreps_) {
    SubgroupIrrep s{ir.label, {}};
    bool trivial = true;
    for (std::size_t g = 0; g < order(); ++g) {
      s.characters.push_back(ir.character(g));
      trivial = trivial && std::abs(ir.character(g) - Complex(1.0)) < kGroupTol;
    }
    if (trivial) h.trivial_label = ir.label;
    h.irreps.push_back(std::move(s));
  }
  return h;
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

namespace {

Eigen::MatrixXcd read_matrix(const nlohmann::json& j, int dim) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  const auto& re = j.at("real");
  if (static_cast<int>(re.size()) != dim) throw GroupValidationError("matrix has wrong row count");
  for (int r = 0; r < dim; ++r) {
    if (static_cast<int>(re[r].size()) != dim) throw GroupValidationError("matrix has wrong column count");
    for (int c = 0; c < dim; ++c) m(r, c) = re[r][c].get<double>();
  }
  if (j.contains("imag")) {
    const auto& im = j["imag"];
    for (int r = 0; r < dim; ++r)
      for (int c = 0; c < dim; ++c) m(r, c) += Complex(0.0, im.at(r).at(c).get<double>());
  }
  return m;
}

}  // namespace

GroupSpec parse_group_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw GroupValidationError(std::string("group file is not valid JSON: ") + e.what());
  }
  try {
    auto name = j.at("name").get<std::string>();
    auto elements = j.at("elements").get<std::vector<std::string>>();
    auto table = j.at("mult_table").get<std::vector<std::vector<std::size_t>>>();
    std::vector<IrrepSpec> irreps;
    for (const auto& jr : j.at("irreps")) {
      IrrepSpec ir;
      ir.label = jr.at("label").get<std::string>();
      ir.dim = jr.at("dim").get<int>();
      for (const auto& jm : jr.at("matrices")) ir.matrices.push_back(read_matrix(jm, ir.dim));
      irreps.push_back(std::move(ir));
    }
    std::vector<SubgroupSpec> subgroups;
    if (j.contains("subgroups")) {
      for (const auto& js : j["subgroups"]) {
        SubgroupSpec h;
        h.name = js.at("name").get<std::string>();
        h.parent = name;
        h.element_indices = js.at("elements").get<std::vector<std::size_t>>();
        h.trivial_label = js.at("trivial").get<std::string>();
        for (const auto& ji : js.at("irreps")) {
          SubgroupIrrep s;
          s.label = ji.at("label").get<std::string>();
          auto re = ji.at("characters_real").get<std::vector<double>>();
          std::vector<double> im(re.size(), 0.0);
          if (ji.contains("characters_imag")) im = ji["characters_imag"].get<std::vector<double>>();
          if (im.size() != re.size()) throw GroupValidationError("character arrays differ in length");
          for (std::size_t k = 0; k < re.size(); ++k) s.characters.emplace_back(re[k], im[k]);
          h.irreps.push_back(std::move(s));
        }
        subgroups.push_back(std::move(h));
      }
    }
    return GroupSpec(std::move(name), std::move(elements), std::move(table), std::move(irreps), std::move(subgroups));
  } catch (const nlohmann::json::exception& e) {
    throw GroupValidationError(std::string("group file has missing or mistyped fields: ") + e.what());
  }
}

GroupSpec load_group_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GroupValidationError("cannot open group file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_group_json(ss.str());
}

// ---------------------------------------------------------------------------
// Representation theory
// ---------------------------------------------------------------------------

std::vector<std::string> restrict_irrep(const GroupSpec& g, const IrrepSpec& irrep, const SubgroupSpec& h) {
  (void)g;
  const int d = irrep.dim;
  std::mt19937_64 rng(0x5eed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  Eigen::MatrixXcd mix = Eigen::MatrixXcd::Zero(d, d);
  for (auto e : h.element_indices) mix += Complex(uni(rng), uni(rng)) * irrep.matrices.at(e);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(mix);
  if (es.info() != Eigen::Success) throw std::runtime_error("restrict_irrep: eigensolver failed");

  std::vector<std::string> labels;
  for (int k = 0; k < d; ++k) {
    Eigen::VectorXcd v = es.eigenvectors().col(k);
    v.normalize();
    std::vector<Complex> chi;
    for (auto e : h.element_indices) {
      const Eigen::VectorXcd w = irrep.matrices.at(e) * v;
      const Complex c = v.dot(w);
      if ((w - c * v).norm() > kCharTol)
        throw std::runtime_error("restrict_irrep: restriction of " + irrep.label + " to " + h.name +
                                 " is not simultaneously diagonalizable");
      chi.push_back(c);
    }
    bool matched = false;
    for (const auto& sir : h.irreps) {
      if (same_characters(chi, sir.characters, kCharTol)) {
        labels.push_back(sir.label);
        matched = true;
        break;
      }
    }
    if (!matched) throw std::runtime_error("restrict_irrep: joint eigenvector matches no irrep of " + h.name);
  }
  // canonical multiset order: subgroup irrep order
  auto rank = [&](const std::string& l) {
    for (std::size_t i = 0; i < h.irreps.size(); ++i)
      if (h.irreps[i].label == l) return i;
    return h.irreps.size();
  };
  std::sort(labels.begin(), labels.end(), [&](const auto& a, const auto& b) { return rank(a) < rank(b); });
  return labels;
}

FermionOperator adjoint_action(const GroupSpec& g, std::size_t element, const FermionOperator& t,
                               const OrbitalBasis& basis) {
  auto transform = [&](const LadderOp& l) {
    const int p = l.mode / 2;
    const int spin = l.mode % 2;
    if (p >= basis.n_spatial()) throw std::out_of_range("adjoint_action: mode " + std::to_string(l.mode) + " unlabeled");
    const auto& shell = basis.shell_of(p);
    if (shell.irrep.empty() || !g.has_irrep(shell.irrep))
      throw std::out_of_range("adjoint_action: orbital " + std::to_string(p) + " has no " + g.name() + " irrep label");
    const auto& d = g.irrep(shell.irrep).matrices.at(element);
    const int mu = basis.component_of(p);
    FermionOperator out;
    for (int nu = 0; nu < shell.dim(); ++nu) {
      const Complex c = l.dagger ? d(nu, mu) : std::conj(d(nu, mu));
      if (std::abs(c) < kDeadTermThreshold) continue;
      out += FermionOperator::ladder({OrbitalBasis::spin_orbital(shell.components[nu], spin), l.dagger}, c);
    }
    return out;
  };

  FermionOperator result;
  for (const auto& [key, c] : t.terms()) {
    FermionOperator term = FermionOperator::identity(c);
    for (const auto& l : key) term = term * transform(l);
    result += term;
  }
  return result;
}

FermionOperator project_onto_irrep(const FermionOperator& t, const GroupSpec& g, const std::string& target,
                                   const OrbitalBasis& basis) {
  const auto& ir = g.irrep(target);
  FermionOperator acc;
  for (std::size_t e = 0; e < g.order(); ++e) {
    const Complex w = std::conj(ir.character(e));
    if (std::abs(w) < kDeadTermThreshold) continue;
    acc += adjoint_action(g, e, t, basis) * w;
  }
  return acc * Complex(static_cast<double>(ir.dim) / static_cast<double>(g.order()));
}

int a1_multiplicity(const GroupSpec& g, const std::vector<IrrepFactor>& factors) {
  Complex s{};
  for (std::size_t e = 0; e < g.order(); ++e) {
    Complex prod{1.0};
    for (const auto& f : factors) {
      const Complex chi = g.irrep(f.label).character(e);
      prod *= f.conjugate ? std::conj(chi) : chi;
    }
    s += prod;
  }
  s /= static_cast<double>(g.order());
  const double rounded = std::round(s.real());
  if (std::abs(s - Complex(rounded)) > kCharTol)
    throw std::logic_error("a1_multiplicity: character inner product is not an integer");
  return static_cast<int>(rounded);
}

}  // namespace symvqe
