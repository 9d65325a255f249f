// Test-only reference implementations. Nothing here calls into the library's matrix or
// exponential paths, so agreement with them is an independent check.
#pragma once

#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "symvqe/fermion.hpp"

namespace oracle {

using symvqe::Complex;
using symvqe::FermionOperator;
using symvqe::LadderOp;

/// Jordan–Wigner ladder matrix built from Kronecker products; mode 0 is the least-significant bit.
inline Eigen::MatrixXcd ladder_matrix(int mode, bool dagger, int n_modes) {
  Eigen::MatrixXcd lower(2, 2);
  lower << 0, 1, 0, 0;  // |0><1|
  Eigen::MatrixXcd z(2, 2);
  z << 1, 0, 0, -1;
  Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(2, 2);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(1, 1);
  for (int k = n_modes - 1; k >= 0; --k) {
    const Eigen::MatrixXcd& f = k > mode ? id : (k == mode ? lower : z);
    Eigen::MatrixXcd next = Eigen::kroneckerProduct(m, f);
    m = next;
  }
  return dagger ? Eigen::MatrixXcd(m.adjoint()) : m;
}

inline Eigen::MatrixXcd dense(const FermionOperator& op, int n_modes) {
  const auto dim = Eigen::Index{1} << n_modes;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& [key, c] : op.terms()) {
    Eigen::MatrixXcd t = Eigen::MatrixXcd::Identity(dim, dim);
    for (const auto& l : key) t = t * ladder_matrix(l.mode, l.dagger, n_modes);
    out += c * t;
  }
  return out;
}

/// Product of raw ladder operators as a matrix, no normal ordering involved.
inline Eigen::MatrixXcd dense_raw(const std::vector<LadderOp>& ops, Complex c, int n_modes) {
  const auto dim = Eigen::Index{1} << n_modes;
  Eigen::MatrixXcd t = Eigen::MatrixXcd::Identity(dim, dim);
  for (const auto& l : ops) t = t * ladder_matrix(l.mode, l.dagger, n_modes);
  return c * t;
}

/// Random operator with up to `max_len` ladder operators per raw product.
inline FermionOperator random_operator(std::mt19937_64& rng, int n_modes, int n_terms, int max_len,
                                       bool number_conserving = false) {
  std::uniform_int_distribution<int> mode(0, n_modes - 1);
  std::uniform_int_distribution<int> len(0, max_len);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  FermionOperator op;
  for (int t = 0; t < n_terms; ++t) {
    std::vector<LadderOp> raw;
    if (number_conserving) {
      const int half = len(rng) / 2;
      for (int k = 0; k < half; ++k) raw.push_back({mode(rng), true});
      for (int k = 0; k < half; ++k) raw.push_back({mode(rng), false});
      std::shuffle(raw.begin(), raw.end(), rng);
    } else {
      const int l = len(rng);
      for (int k = 0; k < l; ++k) raw.push_back({mode(rng), (rng() & 1) != 0});
    }
    op += symvqe::normal_order(raw, Complex(u(rng), u(rng)));
  }
  return op;
}

inline double max_abs(const Eigen::MatrixXcd& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

/// Dimension of the real Lie algebra generated by anti-Hermitian matrices, by brute-force
/// closure over real coordinates (real and imaginary parts flattened) with SVD rank tests.
inline int matrix_closure_dimension(const std::vector<Eigen::MatrixXcd>& gens, double tol = 1e-9) {
  std::vector<Eigen::MatrixXcd> basis;
  auto flatten = [](const Eigen::MatrixXcd& m) {
    Eigen::VectorXd v(2 * m.size());
    for (Eigen::Index i = 0; i < m.size(); ++i) {
      v(2 * i) = m.data()[i].real();
      v(2 * i + 1) = m.data()[i].imag();
    }
    return v;
  };
  auto rank_of = [&](const std::vector<Eigen::MatrixXcd>& mats) {
    if (mats.empty()) return 0;
    Eigen::MatrixXd a(2 * mats.front().size(), mats.size());
    for (std::size_t k = 0; k < mats.size(); ++k) a.col(static_cast<Eigen::Index>(k)) = flatten(mats[k]);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
    const auto& s = svd.singularValues();
    int r = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
      if (s(i) > tol * std::max(1.0, s(0))) ++r;
    return r;
  };
  auto try_add = [&](const Eigen::MatrixXcd& m) {
    auto trial = basis;
    trial.push_back(m);
    if (rank_of(trial) > static_cast<int>(basis.size())) {
      basis.push_back(m);
      return true;
    }
    return false;
  };
  for (const auto& g : gens) try_add(g);
  bool grew = true;
  while (grew) {
    grew = false;
    const auto snapshot = basis;
    for (std::size_t i = 0; i < snapshot.size(); ++i)
      for (std::size_t j = i + 1; j < snapshot.size(); ++j)
        grew = try_add(snapshot[i] * snapshot[j] - snapshot[j] * snapshot[i]) || grew;
  }
  return static_cast<int>(basis.size());
}

}  // namespace oracle
