#include "symvqe/vqe.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "symvqe/hamiltonian.hpp"
#include "symvqe/orbital_space.hpp"
#include "symvqe/point_group.hpp"
#include "symvqe/pool.hpp"

namespace symvqe {

namespace {

FciResult dense_fci(const SparseHamiltonian& h) {
  const Eigen::MatrixXcd m = Eigen::MatrixXcd(h.op.matrix());
  FciResult out;
  if (m.imag().cwiseAbs().maxCoeff() == 0.0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m.real());
    out.energy = es.eigenvalues()(0);
    out.vector = es.eigenvectors().col(0).cast<Complex>();
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
    out.energy = es.eigenvalues()(0);
    out.vector = es.eigenvectors().col(0);
  }
  return out;
}

// Lanczos with full reorthogonalization and single-vector restarts.
FciResult lanczos_fci(const SparseHamiltonian& h) {
  const auto& a = h.op.matrix();
  const Eigen::Index n = a.rows();
  const Eigen::Index m = std::min<Eigen::Index>(n, 120);
  std::mt19937_64 rng(0x1a2c05);
  std::normal_distribution<double> g;
  Eigen::VectorXcd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = g(rng);
  v.normalize();
  FciResult out;
  out.dense = false;
  for (int restart = 0; restart < 60; ++restart) {
    Eigen::MatrixXcd q(n, m);
    Eigen::VectorXd alpha(m), beta(m);
    q.col(0) = v;
    Eigen::Index k = 0;
    for (; k < m; ++k) {
      Eigen::VectorXcd w = a * q.col(k);
      alpha(k) = q.col(k).dot(w).real();
      for (int pass = 0; pass < 2; ++pass) w -= q.leftCols(k + 1) * (q.leftCols(k + 1).adjoint() * w);
      beta(k) = w.norm();
      if (k + 1 == m || beta(k) < 1e-12) break;
      q.col(k + 1) = w / beta(k);
    }
    const Eigen::Index used = std::min(k + 1, m);
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(used, used);
    for (Eigen::Index i = 0; i < used; ++i) {
      t(i, i) = alpha(i);
      if (i + 1 < used) t(i, i + 1) = t(i + 1, i) = beta(i);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
    v = q.leftCols(used) * es.eigenvectors().col(0).cast<Complex>();
    v.normalize();
    out.energy = es.eigenvalues()(0);
    const double res = (a * v - out.energy * v).norm();
    if (res < 1e-9) break;
  }
  out.vector = v;
  return out;
}

}  // namespace

FciResult fci_reference(const SparseHamiltonian& h) {
  const Eigen::Index dim = h.op.matrix().rows();
  if (dim > kLanczosCap)
    throw std::runtime_error("fci_reference: sector dimension " + std::to_string(dim) + " exceeds the Lanczos cap");
  FciResult out = dim <= kDenseFciCap ? dense_fci(h) : lanczos_fci(h);
  out.residual = (h.op.matrix() * out.vector - out.energy * out.vector).norm();
  if (out.residual > 1e-8) throw std::runtime_error("fci_reference: eigenpair residual above 1e-8");
  out.energy += h.e_core;
  return out;
}

FciResult fci_reference(const MolecularHamiltonian& h) {
  return fci_reference(realize(h, FockSpace::sector(h.n_modes, h.n_electrons, 0)));
}

Eigen::VectorXd fd_gradient(const SparseHamiltonian& h, const Ansatz& ansatz, const Eigen::VectorXcd& ref,
                            const Eigen::VectorXd& theta, double step) {
  const std::size_t k_max = ansatz.size();
  Eigen::VectorXd grad(static_cast<Eigen::Index>(k_max));
  Eigen::VectorXcd prefix = ref;  // state after classes [0, k)
  for (std::size_t k = 0; k < k_max; ++k) {
    const auto kk = static_cast<Eigen::Index>(k);
    double e[2];
    for (int side = 0; side < 2; ++side) {
      Eigen::VectorXd shifted = theta;
      shifted(kk) += side == 0 ? step : -step;
      e[side] = energy(ansatz.apply_range(shifted, prefix, k, k_max), h);
    }
    grad(kk) = (e[0] - e[1]) / (2.0 * step);
    prefix = apply_exponential(prefix, ansatz.generator(k), theta(kk));
  }
  return grad;
}

VQEResult run_vqe(const SparseHamiltonian& h, const Ansatz& ansatz, const Eigen::VectorXcd& ref,
                  const VQEConfig& config, std::optional<double> fci_energy) {
  if (!(config.grad_norm_tol > 0) || !(config.energy_stationarity_tol > 0) || !(config.fd_step > 0))
    throw std::invalid_argument("run_vqe: tolerances must be positive");
  const auto n = static_cast<Eigen::Index>(ansatz.size());
  auto f = [&](const Eigen::VectorXd& th) { return energy(ansatz.state(th, ref), h); };

  VQEResult r;
  r.theta = Eigen::VectorXd::Zero(n);
  r.energy = f(r.theta);
  Eigen::VectorXd grad = n > 0 ? fd_gradient(h, ansatz, ref, r.theta, config.fd_step) : Eigen::VectorXd();
  r.grad_norm = n > 0 ? grad.norm() : 0.0;
  r.trace.push_back({0, r.energy, r.grad_norm});
  double last_change = 0.0;  // θ = 0 is its own previous iterate

  Eigen::MatrixXd hinv = Eigen::MatrixXd::Identity(n, n);
  while (true) {
    if (r.grad_norm < config.grad_norm_tol && std::abs(last_change) < config.energy_stationarity_tol) {
      r.converged = true;
      break;
    }
    if (r.iterations >= config.max_iterations) {
      r.message = "maximum iterations reached";
      break;
    }
    Eigen::VectorXd d = -hinv * grad;
    double slope = grad.dot(d);
    if (slope >= 0) {
      hinv.setIdentity();
      d = -grad;
      slope = grad.dot(d);
    }
    if (d.norm() > 1.0) {
      slope /= d.norm();
      d.normalize();
    }
    double alpha = 1.0, e_new = 0.0;
    bool accepted = false;
    for (int bt = 0; bt < 40; ++bt) {
      e_new = f(r.theta + alpha * d);
      if (e_new <= r.energy + 1e-4 * alpha * slope) {
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!accepted) {
      r.message = "line search failed to decrease the energy";
      break;
    }
    const Eigen::VectorXd s = alpha * d;
    r.theta += s;
    const Eigen::VectorXd grad_new = fd_gradient(h, ansatz, ref, r.theta, config.fd_step);
    const Eigen::VectorXd y = grad_new - grad;
    const double sy = s.dot(y);
    if (sy > 1e-12) {
      const double rho = 1.0 / sy;
      const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
      hinv = (id - rho * s * y.transpose()) * hinv * (id - rho * y * s.transpose()) + rho * s * s.transpose();
    }
    last_change = e_new - r.energy;
    r.energy = e_new;
    grad = grad_new;
    r.grad_norm = grad.norm();
    ++r.iterations;
    r.trace.push_back({r.iterations, r.energy, r.grad_norm});
  }
  if (fci_energy) r.delta_fci_mha = (r.energy - *fci_energy) * 1e3;
  return r;
}

std::vector<PlateauRow> plateau_diagnostic(const SparseHamiltonian& h, const Pool& pool, const Ansatz& ansatz,
                                           const Eigen::VectorXcd& ref, const OrbitalBasis& basis,
                                           const SubgroupSpec& sub) {
  if (ansatz.size() != pool.classes.size()) throw std::invalid_argument("plateau_diagnostic: ansatz and pool differ");
  std::vector<PlateauRow> rows;
  for (std::size_t k = 0; k < pool.classes.size(); ++k) {
    PlateauRow row;
    row.generator = pool.classes[k].name();
    row.gradient = init_gradient(h, ansatz.generator(k), ref);
    row.plateau = std::abs(row.gradient) < kPlateauThreshold;
    row.abelian_allowed = abelian_allowed(pool.classes[k], basis, sub);
    row.cross_component = !row.abelian_allowed;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace symvqe
