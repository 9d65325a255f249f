#include "symvqe/fermion.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>
#include <unordered_map>
#include <utility>

namespace symvqe {

FermionOperator FermionOperator::identity(Complex c) {
  FermionOperator op;
  op.add_term({}, c);
  return op;
}

FermionOperator FermionOperator::ladder(LadderOp l, Complex c) {
  FermionOperator op;
  op.add_term({l}, c);
  return op;
}

FermionOperator FermionOperator::excitation(int p, int q, Complex c) {
  return normal_order({cre(p), ann(q)}, c);
}

FermionOperator FermionOperator::product(const std::vector<LadderOp>& raw, Complex c) {
  return normal_order(raw, c);
}

Complex FermionOperator::coefficient(const TermKey& key) const {
  auto it = terms_.find(key);
  return it == terms_.end() ? Complex{} : it->second;
}

int FermionOperator::mode_span() const {
  int span = 0;
  for (const auto& [key, c] : terms_)
    for (const auto& l : key) span = std::max(span, l.mode + 1);
  return span;
}

void FermionOperator::add_term(const TermKey& key, Complex c) {
  auto [it, inserted] = terms_.try_emplace(key, c);
  if (!inserted) it->second += c;
  if (std::abs(it->second) < kDeadTermThreshold) terms_.erase(it);
}

void FermionOperator::prune() {
  std::erase_if(terms_, [](const auto& kv) { return std::abs(kv.second) < kDeadTermThreshold; });
}

FermionOperator& FermionOperator::operator+=(const FermionOperator& rhs) {
  for (const auto& [key, c] : rhs.terms_) add_term(key, c);
  return *this;
}

FermionOperator& FermionOperator::operator-=(const FermionOperator& rhs) {
  for (const auto& [key, c] : rhs.terms_) add_term(key, -c);
  return *this;
}

FermionOperator& FermionOperator::operator*=(Complex s) {
  for (auto& [key, c] : terms_) c *= s;
  prune();
  return *this;
}

FermionOperator operator*(const FermionOperator& a, const FermionOperator& b) {
  FermionOperator out;
  std::vector<LadderOp> raw;
  for (const auto& [ka, ca] : a.terms()) {
    for (const auto& [kb, cb] : b.terms()) {
      raw.assign(ka.begin(), ka.end());
      raw.insert(raw.end(), kb.begin(), kb.end());
      out += normal_order(raw, ca * cb);
    }
  }
  return out;
}

bool FermionOperator::approx_equal(const FermionOperator& other, double tol) const {
  return (*this - other).max_abs() <= tol;
}

double FermionOperator::max_abs() const {
  double m = 0.0;
  for (const auto& [key, c] : terms_) m = std::max(m, std::abs(c));
  return m;
}

double FermionOperator::norm() const { return std::sqrt(std::real(inner_product(*this, *this))); }

bool FermionOperator::is_anti_hermitian(double tol) const {
  return (*this + adjoint(*this)).max_abs() <= tol;
}

bool FermionOperator::is_hermitian(double tol) const {
  return (*this - adjoint(*this)).max_abs() <= tol;
}

bool FermionOperator::preserves_particle_number() const {
  for (const auto& [key, c] : terms_) {
    auto n_cre = std::count_if(key.begin(), key.end(), [](const LadderOp& l) { return l.dagger; });
    if (2 * n_cre != static_cast<long>(key.size())) return false;
  }
  return true;
}

std::string FermionOperator::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [key, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.real();
    if (c.imag() != 0.0) os << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i";
    os << ")";
    for (const auto& l : key) os << " a" << (l.dagger ? "+" : "") << "_" << l.mode;
  }
  return os.str();
}

FermionOperator normal_order(const std::vector<LadderOp>& raw, Complex coeff) {
  FermionOperator result;
  if (std::abs(coeff) < kDeadTermThreshold) return result;

  std::vector<std::pair<std::vector<LadderOp>, Complex>> work;
  work.emplace_back(raw, coeff);
  while (!work.empty()) {
    auto [ops, c] = std::move(work.back());
    work.pop_back();

    bool zero = false;
    bool settled = false;
    while (!settled && !zero) {
      settled = true;
      for (std::size_t i = 0; i + 1 < ops.size(); ++i) {
        const LadderOp left = ops[i];
        const LadderOp right = ops[i + 1];
        if (left.dagger == right.dagger) {
          if (left.mode == right.mode) {
            zero = true;  // a†_p a†_p = a_p a_p = 0
            break;
          }
          if (left.mode > right.mode) {
            std::swap(ops[i], ops[i + 1]);
            c = -c;
            settled = false;
          }
        } else if (!left.dagger) {
          // a_p a†_q = δ_pq - a†_q a_p
          if (left.mode == right.mode) {
            std::vector<LadderOp> contracted;
            contracted.reserve(ops.size() - 2);
            contracted.insert(contracted.end(), ops.begin(), ops.begin() + i);
            contracted.insert(contracted.end(), ops.begin() + i + 2, ops.end());
            work.emplace_back(std::move(contracted), c);
          }
          std::swap(ops[i], ops[i + 1]);
          c = -c;
          settled = false;
        }
      }
    }
    if (!zero) result.add_term(ops, c);
  }
  return result;
}

FermionOperator commutator(const FermionOperator& a, const FermionOperator& b) {
  return a * b - b * a;
}

FermionOperator adjoint(const FermionOperator& a) {
  FermionOperator out;
  std::vector<LadderOp> raw;
  for (const auto& [key, c] : a.terms()) {
    raw.clear();
    for (auto it = key.rbegin(); it != key.rend(); ++it) raw.push_back({it->mode, !it->dagger});
    out += normal_order(raw, std::conj(c));
  }
  return out;
}

Complex inner_product(const FermionOperator& a, const FermionOperator& b) {
  Complex s{};
  const auto& ta = a.terms();
  const auto& tb = b.terms();
  auto ia = ta.begin();
  auto ib = tb.begin();
  while (ia != ta.end() && ib != tb.end()) {
    if (ia->first < ib->first) {
      ++ia;
    } else if (ib->first < ia->first) {
      ++ib;
    } else {
      s += std::conj(ia->second) * ib->second;
      ++ia;
      ++ib;
    }
  }
  return s;
}

Generator::Generator(FermionOperator op, double tol) : op_(std::move(op)) {
  if (!op_.is_anti_hermitian(tol))
    throw std::invalid_argument("Generator: operator is not anti-Hermitian: " + op_.to_string());
}

Generator Generator::from_excitation(const FermionOperator& t) { return Generator(t - adjoint(t)); }

std::vector<std::uint64_t> fock_basis(int n_modes, std::optional<int> particle_number) {
  if (n_modes < 0 || n_modes > 62) throw std::invalid_argument("fock_basis: mode count out of range");
  std::vector<std::uint64_t> states;
  const std::uint64_t dim = std::uint64_t{1} << n_modes;
  for (std::uint64_t s = 0; s < dim; ++s) {
    if (!particle_number || std::popcount(s) == *particle_number) states.push_back(s);
  }
  return states;
}

int apply_term(const TermKey& key, std::uint64_t state, std::uint64_t& out) {
  int sign = 1;
  for (auto it = key.rbegin(); it != key.rend(); ++it) {
    const std::uint64_t bit = std::uint64_t{1} << it->mode;
    const bool occupied = (state & bit) != 0;
    if (occupied == it->dagger) return 0;
    if (std::popcount(state & (bit - 1)) & 1) sign = -sign;
    state ^= bit;
  }
  out = state;
  return sign;
}

Eigen::MatrixXcd to_matrix(const FermionOperator& op, int n_modes, std::optional<int> particle_number) {
  if (particle_number ? n_modes > kMaxSectorModes : n_modes > kMaxFullFockModes)
    throw std::invalid_argument("to_matrix: mode count exceeds the dense-matrix cap");
  if (op.mode_span() > n_modes) throw std::invalid_argument("to_matrix: operator acts beyond n_modes");

  const auto states = fock_basis(n_modes, particle_number);
  if (states.empty()) throw EmptySectorError("to_matrix: requested sector has dimension zero");
  std::unordered_map<std::uint64_t, Eigen::Index> index;
  index.reserve(states.size());
  for (std::size_t i = 0; i < states.size(); ++i) index.emplace(states[i], static_cast<Eigen::Index>(i));

  const auto dim = static_cast<Eigen::Index>(states.size());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& [key, c] : op.terms()) {
    for (Eigen::Index col = 0; col < dim; ++col) {
      std::uint64_t target = 0;
      const int sign = apply_term(key, states[col], target);
      if (sign == 0) continue;
      auto it = index.find(target);
      if (it == index.end()) continue;  // leaves the sector
      m(it->second, col) += static_cast<double>(sign) * c;
    }
  }
  return m;
}

}  // namespace symvqe
