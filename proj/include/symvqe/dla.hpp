#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "symvqe/fermion.hpp"

namespace symvqe {

inline constexpr double kDlaTolerance = 1e-10;

/// Orthonormal basis of a Lie closure, either symbolic or as matrices.
struct DLAResult {
  std::vector<FermionOperator> basis;
  std::vector<Eigen::MatrixXcd> matrix_basis;
  int dimension = 0;
  bool is_abelian = true;
  bool truncated = false;
  std::optional<int> deficit_vs_full;
};

/// Default size cap 4^n_modes, saturated at INT_MAX.
int default_max_dim(int n_modes);

/// Lie algebra generated by the generators under iterated commutators. Elements are
/// orthonormalized by modified Gram–Schmidt with one reorthogonalization pass under the
/// term-coefficient inner product; a commutator is added when its normalized residual
/// exceeds `tol`. Sweeps stop on no growth or when `max_dim` is reached (truncated).
DLAResult lie_closure(const std::vector<Generator>& gens, double tol = kDlaTolerance, int max_dim = -1);
/// Same on anti-Hermitian matrices with the Frobenius inner product.
DLAResult lie_closure(const std::vector<Eigen::MatrixXcd>& gens, double tol = kDlaTolerance, int max_dim = -1);

/// Every pairwise commutator canonicalizes to zero.
bool is_abelian(const std::vector<Generator>& gens);

/// Compares Π_k exp(θ_k A_k) with exp(Σ_k θ_k A_k) for random θ ∈ [-π, π) on the Fock space
/// (or a particle-number sector); false on the first draw whose operator-norm gap exceeds tol.
bool torus_check(const std::vector<Generator>& gens, int n_modes, int samples,
                 std::optional<int> particle_number = std::nullopt, double tol = 1e-10,
                 std::uint64_t seed = 0x70105);

/// d(d - 1).
int dimension_deficit(int d);

}  // namespace symvqe
