#include <doctest.h>

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "symvqe/dla.hpp"
#include "symvqe/orbital_space.hpp"
#include "symvqe/pool.hpp"

using namespace symvqe;

namespace {

// one E shell pair: occupied (x, y) = (0, 1), virtual (x, y) = (2, 3)
OrbitalBasis e_pair() { return OrbitalBasis({{"E", 1, {0, 1}, -1.0}, {"E", 2, {2, 3}, 1.0}}, {"A'", "A''", "A'", "A''"}, {true, false}); }

std::vector<Generator> singles(const OrbitalBasis& b, bool diagonal_only) {
  std::vector<Generator> out;
  for (const auto& c : generate_uccsd(b).classes)
    if (c.kind == ExcitationKind::single && (!diagonal_only || c.vir[0] == c.occ[0] + 2)) out.push_back(c.generator);
  return out;
}

std::vector<Eigen::MatrixXcd> as_matrices(const std::vector<Generator>& gens, int n_modes, std::optional<int> n) {
  std::vector<Eigen::MatrixXcd> out;
  for (const auto& g : gens) out.push_back(to_matrix(g.op(), n_modes, n));
  return out;
}

Generator random_generator(std::mt19937_64& rng, int n_modes) {
  const auto t = oracle::random_operator(rng, n_modes, 2, 2, true);
  return Generator(t - adjoint(t));
}

// residual of v after projection onto the orthonormal basis
double residual(const std::vector<FermionOperator>& basis, FermionOperator v) {
  for (const auto& b : basis) v -= b * inner_product(b, v);
  return v.norm();
}

}  // namespace

TEST_CASE("diagonal E-pair generators close to a 2-dimensional Abelian algebra") {
  const auto gens = singles(e_pair(), true);
  REQUIRE(gens.size() == 2);
  const auto r = lie_closure(gens);
  CHECK(r.dimension == 2);
  CHECK(r.is_abelian);
  CHECK_FALSE(r.truncated);
  CHECK(is_abelian(gens));
  CHECK(torus_check(gens, 8, 10, 4));
}

TEST_CASE("u(2) at matrix level") {
  using M = Eigen::Matrix2cd;
  const Complex i(0.0, 1.0);
  const std::vector<Eigen::MatrixXcd> gens{M{{i, 0}, {0, 0}}, M{{0, 0}, {0, i}}, M{{0, 1}, {-1, 0}}, M{{0, i}, {i, 0}}};
  const auto r = lie_closure(gens);
  CHECK(r.dimension == 4);
  CHECK_FALSE(r.is_abelian);
  CHECK(oracle::matrix_closure_dimension(gens) == 4);
  // the off-diagonal pair alone already generates su(2)
  const auto su2 = lie_closure(std::vector<Eigen::MatrixXcd>{gens[2], gens[3]});
  CHECK(su2.dimension == 3);
  CHECK_THROWS_AS(lie_closure(std::vector<Eigen::MatrixXcd>{M{{1, 0}, {0, 0}}}), std::invalid_argument);
}

TEST_CASE("all four real E-pair singles close non-Abelian") {
  const auto gens = singles(e_pair(), false);
  REQUIRE(gens.size() == 4);
  const auto r = lie_closure(gens);
  CHECK_FALSE(r.is_abelian);
  CHECK_FALSE(is_abelian(gens));
  const int oracle_dim = oracle::matrix_closure_dimension(as_matrices(gens, 8, 1));
  CHECK(oracle_dim == 6);  // so(4) on the four spatial orbitals
  CHECK(r.dimension == oracle_dim);
  CHECK_FALSE(torus_check(gens, 8, 10, 4));
}

TEST_CASE("is_abelian and torus_check edge cases") {
  const auto diag = singles(e_pair(), true);
  const auto all = singles(e_pair(), false);
  CHECK(is_abelian({}));
  CHECK(is_abelian({all[1]}));
  CHECK(torus_check({}, 8, 10));
  CHECK(torus_check({all[1]}, 8, 5, 4));
  // x->x together with x->y
  std::vector<Generator> mixed{diag[0]};
  for (const auto& g : all)
    if (!commutator(diag[0].op(), g.op()).empty()) {
      mixed.push_back(g);
      break;
    }
  REQUIRE(mixed.size() == 2);
  CHECK_FALSE(is_abelian(mixed));
  CHECK_FALSE(torus_check(mixed, 8, 10, 4));
}

TEST_CASE("dimension deficit") {
  CHECK(dimension_deficit(1) == 0);
  CHECK(dimension_deficit(2) == 2);
  CHECK(dimension_deficit(3) == 6);
  CHECK_THROWS_AS(dimension_deficit(0), std::invalid_argument);
}

TEST_CASE("truncation and max_dim") {
  const auto gens = singles(e_pair(), false);
  const auto r = lie_closure(gens, kDlaTolerance, 5);
  CHECK(r.truncated);
  CHECK(r.dimension == 5);
  CHECK_THROWS_AS(lie_closure(gens, kDlaTolerance, 3), std::invalid_argument);
  CHECK(default_max_dim(4) == 256);
}

TEST_CASE("closure soundness, permutation invariance, monotonicity") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 6; ++trial) {
    const int n = 3 + trial % 2;
    std::vector<Generator> gens;
    for (int k = 0; k < 3; ++k) gens.push_back(random_generator(rng, n));
    const auto r = lie_closure(gens);
    REQUIRE_FALSE(r.truncated);
    for (std::size_t i = 0; i < r.basis.size(); ++i) {
      CHECK(std::abs(inner_product(r.basis[i], r.basis[i]) - 1.0) < 1e-10);
      for (std::size_t j = i + 1; j < r.basis.size(); ++j) {
        CHECK(std::abs(inner_product(r.basis[i], r.basis[j])) < 1e-10);
        CHECK(residual(r.basis, commutator(r.basis[i], r.basis[j])) < 10 * kDlaTolerance);
      }
    }
    auto shuffled = gens;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    CHECK(lie_closure(shuffled).dimension == r.dimension);

    auto more = gens;
    more.push_back(random_generator(rng, n));
    CHECK(lie_closure(more).dimension >= r.dimension);
    const std::vector<Generator> fewer(gens.begin(), gens.begin() + 2);
    CHECK(lie_closure(fewer).dimension <= r.dimension);

    // symbolic against the dense closure on the full Fock space
    CHECK(r.dimension == oracle::matrix_closure_dimension(as_matrices(gens, n, std::nullopt)));
  }
}

TEST_CASE("symbolic and matrix closures agree on small pools") {
  const auto all = singles(e_pair(), false);
  for (std::size_t k = 1; k <= all.size(); ++k) {
    const std::vector<Generator> gens(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(k));
    const auto sym = lie_closure(gens);
    const auto mat = lie_closure(as_matrices(gens, 8, 1));
    CHECK(sym.dimension == mat.dimension);
    CHECK(sym.is_abelian == mat.is_abelian);
  }
}
