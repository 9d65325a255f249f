#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "symvqe/fermion.hpp"

namespace symvqe {

struct MolecularHamiltonian;
struct Pool;

/// Occupation-number basis: either the full 2^n space or the states with fixed particle
/// number and 2·S_z. Bit k of a state is the occupation of spin orbital k (even k = α).
class FockSpace {
 public:
  static std::shared_ptr<const FockSpace> full(int n_modes);
  static std::shared_ptr<const FockSpace> sector(int n_modes, int n_particles, int two_sz);

  int n_modes() const { return n_modes_; }
  Eigen::Index dim() const { return static_cast<Eigen::Index>(states_.size()); }
  bool is_full() const { return full_; }
  std::uint64_t state(Eigen::Index k) const { return states_[static_cast<std::size_t>(k)]; }
  /// Index of a basis state, or -1 when it lies outside the space.
  Eigen::Index index_of(std::uint64_t state) const;

 private:
  FockSpace() = default;
  int n_modes_ = 0;
  bool full_ = false;
  std::vector<std::uint64_t> states_;
  std::unordered_map<std::uint64_t, Eigen::Index> lookup_;
};

using SpacePtr = std::shared_ptr<const FockSpace>;

struct Statevector {
  SpacePtr space;
  Eigen::VectorXcd amplitudes;

  double norm() const { return amplitudes.norm(); }
};

/// Row-major sparse Jordan–Wigner realization of a FermionOperator on a FockSpace.
class SparseQubitOperator {
 public:
  /// Throws std::domain_error when the operator maps a basis state outside the space.
  SparseQubitOperator(const FermionOperator& op, SpacePtr space);

  const Eigen::SparseMatrix<Complex, Eigen::RowMajor>& matrix() const { return m_; }
  const SpacePtr& space() const { return space_; }
  Eigen::VectorXcd apply(const Eigen::VectorXcd& v) const { return m_ * v; }
  /// Induced 1-norm, an upper bound on the spectral norm.
  double one_norm() const { return one_norm_; }

 private:
  SpacePtr space_;
  Eigen::SparseMatrix<Complex, Eigen::RowMajor> m_;
  double one_norm_ = 0.0;
};

/// Computational basis state with the listed spin orbitals occupied.
Statevector hartree_fock_state(int n_modes, const std::vector<int>& occupied);
Statevector hartree_fock_state(const SpacePtr& space, const std::vector<int>& occupied);

inline constexpr double kTaylorTolerance = 1e-13;
inline constexpr int kTaylorMaxTerms = 200;

/// exp(θA)ψ by a truncated Taylor series; the step is split so each substep has |θ|‖A‖₁ ≤ 1.
Eigen::VectorXcd apply_exponential(const Eigen::VectorXcd& psi, const SparseQubitOperator& a, double theta);
Statevector apply_exponential(const Statevector& psi, const Generator& a, double theta);

/// Hamiltonian realized on a space, with its scalar core energy.
struct SparseHamiltonian {
  SparseQubitOperator op;
  double e_core = 0.0;
};

SparseHamiltonian realize(const MolecularHamiltonian& h, const SpacePtr& space);

/// Re⟨ψ|H|ψ⟩ + e_core; throws std::runtime_error if the imaginary residue exceeds 1e-10.
double energy(const Eigen::VectorXcd& psi, const SparseHamiltonian& h);
double energy(const Statevector& psi, const MolecularHamiltonian& h);

/// ⟨ref|[H, A]|ref⟩ = 2 Re⟨ref|H A|ref⟩.
double init_gradient(const SparseHamiltonian& h, const SparseQubitOperator& a, const Eigen::VectorXcd& ref);
double init_gradient(const MolecularHamiltonian& h, const Generator& a, const Statevector& ref);

/// A pool realized on a space: one sparse generator per spin-complemented class.
class Ansatz {
 public:
  Ansatz(const Pool& pool, SpacePtr space);

  std::size_t size() const { return gens_.size(); }
  const SparseQubitOperator& generator(std::size_t k) const { return gens_[k]; }
  const SpacePtr& space() const { return space_; }

  /// Π_k exp(θ_k A_k)|ref⟩ with class 0 applied first.
  Eigen::VectorXcd state(const Eigen::VectorXd& theta, const Eigen::VectorXcd& ref) const;
  /// Applies classes [begin, end) to v.
  Eigen::VectorXcd apply_range(const Eigen::VectorXd& theta, Eigen::VectorXcd v, std::size_t begin,
                               std::size_t end) const;

 private:
  SpacePtr space_;
  std::vector<SparseQubitOperator> gens_;
};

Statevector ansatz_state(const Eigen::VectorXd& theta, const Pool& pool, const Statevector& ref);

}  // namespace symvqe
