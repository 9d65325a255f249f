#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace symvqe {

using Complex = std::complex<double>;

/// Coefficients below this magnitude are dropped after every arithmetic step.
inline constexpr double kDeadTermThreshold = 1e-14;

/// Largest mode count realized as a full-Fock dense matrix.
inline constexpr int kMaxFullFockModes = 14;
/// Largest mode count realized as a particle-number-restricted dense matrix.
inline constexpr int kMaxSectorModes = 16;

struct LadderOp {
  int mode = 0;
  bool dagger = false;

  friend bool operator==(const LadderOp&, const LadderOp&) = default;
  friend auto operator<=>(const LadderOp& a, const LadderOp& b) {
    // creations sort before annihilations, each block ascending in mode
    if (a.dagger != b.dagger) return b.dagger <=> a.dagger;
    return a.mode <=> b.mode;
  }
};

inline LadderOp cre(int mode) { return {mode, true}; }
inline LadderOp ann(int mode) { return {mode, false}; }

/// Canonical product of ladder operators: creations ascending, then annihilations ascending.
using TermKey = std::vector<LadderOp>;

/// A sum of canonically ordered ladder-operator products with complex coefficients.
///
/// Values are immutable in practice: every operation returns a new operator.
class FermionOperator {
 public:
  using TermMap = std::map<TermKey, Complex>;

  FermionOperator() = default;

  static FermionOperator identity(Complex c = 1.0);
  /// Single creation or annihilation operator.
  static FermionOperator ladder(LadderOp op, Complex c = 1.0);
  /// One-body excitation a†_p a_q.
  static FermionOperator excitation(int p, int q, Complex c = 1.0);
  /// Normal-orders an arbitrary product; see normal_order().
  static FermionOperator product(const std::vector<LadderOp>& raw, Complex c = 1.0);

  const TermMap& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  /// Coefficient of a canonical key, zero if absent.
  Complex coefficient(const TermKey& key) const;
  /// One past the largest mode index used (0 for scalars / empty).
  int mode_span() const;

  FermionOperator& operator+=(const FermionOperator& rhs);
  FermionOperator& operator-=(const FermionOperator& rhs);
  FermionOperator& operator*=(Complex s);
  friend FermionOperator operator+(FermionOperator a, const FermionOperator& b) { return a += b; }
  friend FermionOperator operator-(FermionOperator a, const FermionOperator& b) { return a -= b; }
  friend FermionOperator operator*(FermionOperator a, Complex s) { return a *= s; }
  friend FermionOperator operator*(Complex s, FermionOperator a) { return a *= s; }
  FermionOperator operator-() const { return *this * Complex(-1.0); }
  /// Operator product, normal ordered.
  friend FermionOperator operator*(const FermionOperator& a, const FermionOperator& b);

  /// Term-exact comparison within an absolute tolerance.
  bool approx_equal(const FermionOperator& other, double tol = 1e-12) const;
  /// Largest coefficient magnitude (0 when empty).
  double max_abs() const;
  /// sqrt(Σ|c|²) over canonical terms.
  double norm() const;
  bool is_anti_hermitian(double tol = 1e-12) const;
  bool is_hermitian(double tol = 1e-12) const;
  /// Every term has equal creation and annihilation counts.
  bool preserves_particle_number() const;

  std::string to_string() const;

 private:
  void add_term(const TermKey& key, Complex c);
  void prune();
  TermMap terms_;

  friend FermionOperator normal_order(const std::vector<LadderOp>&, Complex);
};

/// Rewrites coeff * raw[0] raw[1] ... into canonical form using {a_p, a†_q} = δ_pq.
FermionOperator normal_order(const std::vector<LadderOp>& raw, Complex coeff = 1.0);

FermionOperator commutator(const FermionOperator& a, const FermionOperator& b);
FermionOperator adjoint(const FermionOperator& a);
/// Σ conj(a_k) b_k over matching canonical keys.
Complex inner_product(const FermionOperator& a, const FermionOperator& b);

/// An anti-Hermitian operator; construction rejects anything else.
class Generator {
 public:
  explicit Generator(FermionOperator op, double tol = 1e-12);
  /// T - T†.
  static Generator from_excitation(const FermionOperator& t);

  const FermionOperator& op() const { return op_; }

 private:
  FermionOperator op_;
};

class EmptySectorError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Occupation-number basis states of n_modes, optionally restricted to a particle number.
/// Bit k of each state is the occupation of mode k.
std::vector<std::uint64_t> fock_basis(int n_modes, std::optional<int> particle_number = std::nullopt);

/// Applies a canonical term to a basis state with Jordan–Wigner signs.
/// Returns the sign (+1/-1) and sets `out`, or returns 0 when the state is annihilated.
int apply_term(const TermKey& key, std::uint64_t state, std::uint64_t& out);

/// Dense matrix in the occupation-number basis (Jordan–Wigner ordering), optionally on a
/// particle-number sector; rows/columns follow fock_basis().
Eigen::MatrixXcd to_matrix(const FermionOperator& op, int n_modes,
                           std::optional<int> particle_number = std::nullopt);

}  // namespace symvqe
