#include "symvqe/simulator.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#include "symvqe/hamiltonian.hpp"
#include "symvqe/pool.hpp"

namespace symvqe {

SpacePtr FockSpace::full(int n_modes) {
  if (n_modes < 0 || n_modes > 24) throw std::invalid_argument("FockSpace: full space limited to 24 modes");
  auto s = std::shared_ptr<FockSpace>(new FockSpace);
  s->n_modes_ = n_modes;
  s->full_ = true;
  s->states_.resize(std::size_t{1} << n_modes);
  for (std::size_t k = 0; k < s->states_.size(); ++k) s->states_[k] = k;
  return s;
}

SpacePtr FockSpace::sector(int n_modes, int n_particles, int two_sz) {
  if (n_modes < 0 || n_modes > 24) throw std::invalid_argument("FockSpace: sector limited to 24 modes");
  auto s = std::shared_ptr<FockSpace>(new FockSpace);
  s->n_modes_ = n_modes;
  std::uint64_t alpha_mask = 0;
  for (int k = 0; k < n_modes; k += 2) alpha_mask |= std::uint64_t{1} << k;
  for (auto st : fock_basis(n_modes, n_particles)) {
    const int na = std::popcount(st & alpha_mask);
    const int nb = n_particles - na;
    if (na - nb == two_sz) s->states_.push_back(st);
  }
  if (s->states_.empty())
    throw EmptySectorError("FockSpace: no states with N=" + std::to_string(n_particles) +
                           ", 2Sz=" + std::to_string(two_sz));
  for (std::size_t k = 0; k < s->states_.size(); ++k)
    s->lookup_.emplace(s->states_[k], static_cast<Eigen::Index>(k));
  return s;
}

Eigen::Index FockSpace::index_of(std::uint64_t state) const {
  if (full_) return state < states_.size() ? static_cast<Eigen::Index>(state) : -1;
  auto it = lookup_.find(state);
  return it == lookup_.end() ? -1 : it->second;
}

SparseQubitOperator::SparseQubitOperator(const FermionOperator& op, SpacePtr space) : space_(std::move(space)) {
  if (op.mode_span() > space_->n_modes())
    throw std::invalid_argument("SparseQubitOperator: operator acts on modes beyond the space");
  std::vector<Eigen::Triplet<Complex>> trip;
  const Eigen::Index dim = space_->dim();
  for (Eigen::Index col = 0; col < dim; ++col) {
    const auto src = space_->state(col);
    for (const auto& [key, c] : op.terms()) {
      std::uint64_t out = 0;
      const int sign = apply_term(key, src, out);
      if (sign == 0) continue;
      const Eigen::Index row = space_->index_of(out);
      if (row < 0) throw std::domain_error("SparseQubitOperator: operator leaves the state space");
      trip.emplace_back(row, col, c * static_cast<double>(sign));
    }
  }
  m_.resize(dim, dim);
  m_.setFromTriplets(trip.begin(), trip.end());
  m_.makeCompressed();
  Eigen::VectorXd col_sum = Eigen::VectorXd::Zero(dim);
  for (Eigen::Index r = 0; r < m_.outerSize(); ++r)
    for (decltype(m_)::InnerIterator it(m_, r); it; ++it) col_sum(it.col()) += std::abs(it.value());
  one_norm_ = dim > 0 ? col_sum.maxCoeff() : 0.0;
}

namespace {

std::uint64_t occupation_mask(int n_modes, const std::vector<int>& occupied) {
  std::uint64_t mask = 0;
  for (int p : occupied) {
    if (p < 0 || p >= n_modes) throw std::invalid_argument("hartree_fock_state: spin orbital out of range");
    const auto bit = std::uint64_t{1} << p;
    if (mask & bit) throw std::invalid_argument("hartree_fock_state: duplicate spin orbital");
    mask |= bit;
  }
  return mask;
}

}  // namespace

Statevector hartree_fock_state(const SpacePtr& space, const std::vector<int>& occupied) {
  const auto mask = occupation_mask(space->n_modes(), occupied);
  const auto idx = space->index_of(mask);
  if (idx < 0) throw std::invalid_argument("hartree_fock_state: determinant lies outside the space");
  Statevector s{space, Eigen::VectorXcd::Zero(space->dim())};
  s.amplitudes(idx) = 1.0;
  return s;
}

Statevector hartree_fock_state(int n_modes, const std::vector<int>& occupied) {
  return hartree_fock_state(FockSpace::full(n_modes), occupied);
}

Eigen::VectorXcd apply_exponential(const Eigen::VectorXcd& psi, const SparseQubitOperator& a, double theta) {
  if (theta == 0.0 || a.one_norm() == 0.0) return psi;
  const int steps = std::max(1, static_cast<int>(std::ceil(std::abs(theta) * a.one_norm())));
  const double h = theta / steps;
  Eigen::VectorXcd v = psi;
  for (int s = 0; s < steps; ++s) {
    Eigen::VectorXcd term = v;
    bool converged = false;
    for (int k = 1; k <= kTaylorMaxTerms; ++k) {
      term = (h / k) * (a.matrix() * term);
      v += term;
      if (term.norm() < kTaylorTolerance) {
        converged = true;
        break;
      }
    }
    if (!converged) throw std::runtime_error("apply_exponential: Taylor series did not converge in 200 terms");
  }
  return v;
}

Statevector apply_exponential(const Statevector& psi, const Generator& a, double theta) {
  const SparseQubitOperator m(a.op(), psi.space);
  return {psi.space, apply_exponential(psi.amplitudes, m, theta)};
}

SparseHamiltonian realize(const MolecularHamiltonian& h, const SpacePtr& space) {
  return {SparseQubitOperator(h.op, space), h.e_core};
}

double energy(const Eigen::VectorXcd& psi, const SparseHamiltonian& h) {
  const Complex e = psi.dot(h.op.matrix() * psi);
  if (std::abs(e.imag()) > 1e-10) throw std::runtime_error("energy: imaginary residue exceeds 1e-10");
  return e.real() + h.e_core;
}

double energy(const Statevector& psi, const MolecularHamiltonian& h) { return energy(psi.amplitudes, realize(h, psi.space)); }

double init_gradient(const SparseHamiltonian& h, const SparseQubitOperator& a, const Eigen::VectorXcd& ref) {
  const Eigen::VectorXcd ar = a.matrix() * ref;
  const Eigen::VectorXcd hr = h.op.matrix() * ref;
  return 2.0 * hr.dot(ar).real();
}

double init_gradient(const MolecularHamiltonian& h, const Generator& a, const Statevector& ref) {
  return init_gradient(realize(h, ref.space), SparseQubitOperator(a.op(), ref.space), ref.amplitudes);
}

Ansatz::Ansatz(const Pool& pool, SpacePtr space) : space_(std::move(space)) {
  gens_.reserve(pool.classes.size());
  for (const auto& c : pool.classes) gens_.emplace_back(c.generator.op(), space_);
}

Eigen::VectorXcd Ansatz::apply_range(const Eigen::VectorXd& theta, Eigen::VectorXcd v, std::size_t begin,
                                     std::size_t end) const {
  for (std::size_t k = begin; k < end; ++k) v = apply_exponential(v, gens_[k], theta(static_cast<Eigen::Index>(k)));
  return v;
}

Eigen::VectorXcd Ansatz::state(const Eigen::VectorXd& theta, const Eigen::VectorXcd& ref) const {
  if (static_cast<std::size_t>(theta.size()) != gens_.size())
    throw std::invalid_argument("ansatz: parameter vector length differs from the pool's parameter count");
  return apply_range(theta, ref, 0, gens_.size());
}

Statevector ansatz_state(const Eigen::VectorXd& theta, const Pool& pool, const Statevector& ref) {
  if (theta.size() != pool.parameter_count())
    throw std::invalid_argument("ansatz_state: parameter vector length differs from the pool's parameter count");
  const Ansatz a(pool, ref.space);
  return {ref.space, a.state(theta, ref.amplitudes)};
}

}  // namespace symvqe
