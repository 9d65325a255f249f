#include "symvqe/dla.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include <unsupported/Eigen/MatrixFunctions>

namespace symvqe {

namespace {

struct SymbolicOps {
  using T = FermionOperator;
  static Complex dot(const T& a, const T& b) { return inner_product(a, b); }
  static double norm(const T& a) { return a.norm(); }
  static T axpy(const T& y, Complex c, const T& x) { return y - x * c; }
  static T scale(const T& a, double s) { return a * Complex(s); }
  static T bracket(const T& a, const T& b) { return commutator(a, b); }
};

struct MatrixOps {
  using T = Eigen::MatrixXcd;
  static Complex dot(const T& a, const T& b) { return (a.adjoint() * b).trace(); }
  static double norm(const T& a) { return a.norm(); }
  static T axpy(const T& y, Complex c, const T& x) { return y - c * x; }
  static T scale(const T& a, double s) { return a * s; }
  static T bracket(const T& a, const T& b) { return a * b - b * a; }
};

template <class Ops>
struct Closure {
  std::vector<typename Ops::T> basis;
  double tol;

  // Returns true when v carried a new direction and was appended.
  bool add(typename Ops::T v) {
    const double n0 = Ops::norm(v);
    if (n0 == 0.0) return false;
    v = Ops::scale(v, 1.0 / n0);
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : basis) v = Ops::axpy(v, Ops::dot(b, v), b);
    const double r = Ops::norm(v);
    if (r <= tol) return false;
    basis.push_back(Ops::scale(v, 1.0 / r));
    return true;
  }
};

template <class Ops>
void run_closure(Closure<Ops>& c, const std::vector<typename Ops::T>& seeds, int max_dim, DLAResult& out) {
  for (const auto& s : seeds) {
    if (static_cast<int>(c.basis.size()) >= max_dim) {
      out.truncated = true;
      return;
    }
    c.add(s);
  }
  std::size_t done = 0;  // pairs among the first `done` elements are already bracketed
  while (done < c.basis.size()) {
    const std::size_t size = c.basis.size();
    for (std::size_t j = done; j < size; ++j)
      for (std::size_t i = 0; i < j; ++i) {
        if (static_cast<int>(c.basis.size()) >= max_dim) {
          out.truncated = true;
          return;
        }
        c.add(Ops::bracket(c.basis[i], c.basis[j]));
      }
    done = size;
  }
}

template <class Ops>
bool basis_commutes(const std::vector<typename Ops::T>& b, double tol) {
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = i + 1; j < b.size(); ++j)
      if (Ops::norm(Ops::bracket(b[i], b[j])) > tol) return false;
  return true;
}

}  // namespace

int default_max_dim(int n_modes) {
  if (n_modes >= 15) return INT_MAX;
  return 1 << (2 * n_modes);
}

DLAResult lie_closure(const std::vector<Generator>& gens, double tol, int max_dim) {
  int span = 0;
  for (const auto& g : gens) span = std::max(span, g.op().mode_span());
  if (max_dim < 0) max_dim = std::max(default_max_dim(span), static_cast<int>(gens.size()));
  if (max_dim < static_cast<int>(gens.size())) throw std::invalid_argument("lie_closure: max_dim below generator count");
  Closure<SymbolicOps> c{{}, tol};
  std::vector<FermionOperator> seeds;
  for (const auto& g : gens) seeds.push_back(g.op());
  DLAResult out;
  run_closure(c, seeds, max_dim, out);
  out.basis = std::move(c.basis);
  out.dimension = static_cast<int>(out.basis.size());
  out.is_abelian = basis_commutes<SymbolicOps>(out.basis, 1e-12);
  return out;
}

DLAResult lie_closure(const std::vector<Eigen::MatrixXcd>& gens, double tol, int max_dim) {
  for (const auto& m : gens)
    if (m.rows() != m.cols() || (m + m.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
      throw std::invalid_argument("lie_closure: matrix generators must be square and anti-Hermitian");
  if (max_dim < 0) max_dim = gens.empty() ? 0 : std::max(static_cast<int>(gens.front().size()), static_cast<int>(gens.size()));
  if (max_dim < static_cast<int>(gens.size())) throw std::invalid_argument("lie_closure: max_dim below generator count");
  Closure<MatrixOps> c{{}, tol};
  DLAResult out;
  run_closure(c, gens, max_dim, out);
  out.matrix_basis = std::move(c.basis);
  out.dimension = static_cast<int>(out.matrix_basis.size());
  out.is_abelian = basis_commutes<MatrixOps>(out.matrix_basis, 1e-12);
  return out;
}

bool is_abelian(const std::vector<Generator>& gens) {
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      if (!commutator(gens[i].op(), gens[j].op()).empty()) return false;
  return true;
}

bool torus_check(const std::vector<Generator>& gens, int n_modes, int samples, std::optional<int> particle_number,
                 double tol, std::uint64_t seed) {
  if (gens.empty()) return true;
  std::vector<Eigen::MatrixXcd> mats;
  for (const auto& g : gens) mats.push_back(to_matrix(g.op(), n_modes, particle_number));
  const Eigen::Index dim = mats.front().rows();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-std::numbers::pi, std::numbers::pi);
  for (int s = 0; s < samples; ++s) {
    Eigen::MatrixXcd product = Eigen::MatrixXcd::Identity(dim, dim);
    Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto& m : mats) {
      const double theta = u(rng);
      const Eigen::MatrixXcd step = (theta * m).exp();
      product = step * product;
      sum += theta * m;
    }
    const Eigen::MatrixXcd gap = product - sum.exp();
    // Frobenius bounds the operator norm from above; fall back to the exact 2-norm
    if (gap.norm() <= tol) continue;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(gap);
    if (svd.singularValues()(0) > tol) return false;
  }
  return true;
}

int dimension_deficit(int d) {
  if (d < 1) throw std::invalid_argument("dimension_deficit: d must be at least 1");
  return d * (d - 1);
}

}  // namespace symvqe
