#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "symvqe/simulator.hpp"

namespace symvqe {

class OrbitalBasis;
struct SubgroupSpec;
class GroupSpec;
struct Pool;

/// Sector dimensions up to this size are diagonalized densely; larger ones use Lanczos.
inline constexpr Eigen::Index kDenseFciCap = 4000;
inline constexpr Eigen::Index kLanczosCap = 200000;

struct FciResult {
  double energy = 0.0;
  Eigen::VectorXcd vector;
  double residual = 0.0;
  bool dense = true;
};

/// Lowest eigenpair of the realized Hamiltonian on its space, e_core included.
FciResult fci_reference(const SparseHamiltonian& h);
/// Convenience: the (N, S_z = 0) sector of the Hamiltonian's electron count.
FciResult fci_reference(const MolecularHamiltonian& h);

struct VQEConfig {
  double grad_norm_tol = 1e-4;
  double energy_stationarity_tol = 1e-6;
  int max_iterations = 1000;
  double fd_step = 1e-5;
};

struct TracePoint {
  int iteration = 0;
  double energy = 0.0;
  double grad_norm = 0.0;
};

struct VQEResult {
  double energy = 0.0;
  Eigen::VectorXd theta;
  double grad_norm = 0.0;
  int iterations = 0;
  bool converged = false;
  std::optional<double> delta_fci_mha;
  std::vector<TracePoint> trace;
  std::string message;  ///< non-empty when the optimizer stopped abnormally
};

/// Central finite-difference gradient of E(θ) = ⟨ψ(θ)|H|ψ(θ)⟩, reusing prefix states.
Eigen::VectorXd fd_gradient(const SparseHamiltonian& h, const Ansatz& ansatz, const Eigen::VectorXcd& ref,
                            const Eigen::VectorXd& theta, double step);

/// BFGS with Armijo backtracking from θ = 0.
VQEResult run_vqe(const SparseHamiltonian& h, const Ansatz& ansatz, const Eigen::VectorXcd& ref,
                  const VQEConfig& config, std::optional<double> fci_energy = std::nullopt);

struct PlateauRow {
  std::string generator;
  double gradient = 0.0;
  bool plateau = false;          ///< |gradient| < 1e-10
  bool abelian_allowed = false;  ///< retained by the subgroup filter
  bool cross_component = false;  ///< equivariant-only: discarded by the subgroup filter
};

inline constexpr double kPlateauThreshold = 1e-10;

std::vector<PlateauRow> plateau_diagnostic(const SparseHamiltonian& h, const Pool& pool, const Ansatz& ansatz,
                                           const Eigen::VectorXcd& ref, const OrbitalBasis& basis,
                                           const SubgroupSpec& sub);

}  // namespace symvqe
