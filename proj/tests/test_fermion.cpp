#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "symvqe/fermion.hpp"

using namespace symvqe;

namespace {
FermionOperator E(int p, int q) { return FermionOperator::excitation(p, q); }
}  // namespace

TEST_CASE("normal_order applies the CAR relation") {
  const auto op = normal_order({ann(0), cre(0)});
  CHECK(op.approx_equal(FermionOperator::identity() - E(0, 0)));
  CHECK(op.size() == 2);
}

TEST_CASE("normal_order antisymmetrizes creations") {
  const auto op = normal_order({cre(1), cre(0)});
  CHECK(op.approx_equal(FermionOperator::product({cre(0), cre(1)}, -1.0)));
  CHECK(op.coefficient({cre(0), cre(1)}) == Complex(-1.0));
}

TEST_CASE("normal_order of a_2 a+_3 a+_2 matches the dense oracle") {
  const std::vector<LadderOp> raw{ann(2), cre(3), cre(2)};
  const auto op = normal_order(raw);
  // -a+_3 + a+_3 a+_2 a_2 = -a+_3 - a+_2 a+_3 a_2 in canonical order
  FermionOperator expected = FermionOperator::ladder(cre(3), -1.0);
  expected += FermionOperator::product({cre(2), cre(3), ann(2)}, -1.0);
  CHECK(op.approx_equal(expected));
  CHECK(oracle::max_abs(oracle::dense(op, 4) - oracle::dense_raw(raw, 1.0, 4)) < 1e-12);
}

TEST_CASE("repeated modes vanish") {
  CHECK(normal_order({cre(2), cre(2)}).empty());
  CHECK(normal_order({ann(1), cre(0), ann(1)}).empty());
}

TEST_CASE("commutator examples") {
  const auto a = E(0, 1) - E(1, 0);
  CHECK(commutator(a, a).empty());

  const int p = 0, q = 1, r = 2;
  const auto lhs = commutator(E(p, q) - E(q, p), E(q, r) - E(r, q));
  CHECK(lhs.approx_equal(E(p, r) - E(r, p)));
  const Eigen::MatrixXcd dense = oracle::dense(E(p, q) - E(q, p), 3) * oracle::dense(E(q, r) - E(r, q), 3) -
                     oracle::dense(E(q, r) - E(r, q), 3) * oracle::dense(E(p, q) - E(q, p), 3);
  CHECK(oracle::max_abs(oracle::dense(lhs, 3) - dense) < 1e-12);

  // diagonal single-excitation generators on disjoint orbital pairs commute
  const auto axx = Generator::from_excitation(E(4, 0)).op();
  const auto ayy = Generator::from_excitation(E(6, 2)).op();
  CHECK(commutator(axx, ayy).empty());
}

TEST_CASE("adjoint") {
  CHECK(adjoint(E(3, 1)).approx_equal(E(1, 3)));
  CHECK(adjoint(FermionOperator::identity({2.0, 3.0})).approx_equal(FermionOperator::identity({2.0, -3.0})));
  const auto two_body = FermionOperator::product({cre(0), cre(3), ann(2), ann(1)}, {0.5, -1.5});
  const auto m = oracle::dense(two_body, 4);
  CHECK(oracle::max_abs(oracle::dense(adjoint(two_body), 4) - m.adjoint()) < 1e-12);
  CHECK(adjoint(adjoint(two_body)).approx_equal(two_body));
}

TEST_CASE("to_matrix examples") {
  CHECK(oracle::max_abs(to_matrix(FermionOperator::identity(), 2) - Eigen::MatrixXcd::Identity(4, 4)) == 0.0);

  Eigen::MatrixXcd n0(2, 2);
  n0 << 0, 0, 0, 1;
  CHECK(oracle::max_abs(to_matrix(E(0, 0), 1) - n0) == 0.0);

  FermionOperator number;
  for (int p = 0; p < 4; ++p) number += E(p, p);
  const auto m = to_matrix(number, 4, 2);
  CHECK(m.rows() == 6);
  CHECK(oracle::max_abs(m - 2.0 * Eigen::MatrixXcd::Identity(6, 6)) < 1e-14);
}

TEST_CASE("to_matrix rejects empty sectors and oversized realizations") {
  CHECK_THROWS_AS(to_matrix(E(0, 0), 2, 3), EmptySectorError);
  CHECK_THROWS(to_matrix(E(0, 0), kMaxFullFockModes + 1));
  CHECK_THROWS(to_matrix(E(5, 0), 3));
}

TEST_CASE("Generator rejects non-anti-Hermitian operators") {
  CHECK_THROWS(Generator(E(1, 0)));
  CHECK_NOTHROW(Generator::from_excitation(E(1, 0)));
  CHECK_NOTHROW(Generator(FermionOperator::identity({0.0, 1.0})));
}

TEST_CASE("property: symbolic algebra agrees with the dense matrix oracle") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 2 + trial % 5;  // 2..6 modes
    const auto a = oracle::random_operator(rng, n, 4, 4);
    const auto b = oracle::random_operator(rng, n, 4, 4);
    const auto ma = oracle::dense(a, n);
    const auto mb = oracle::dense(b, n);
    CHECK(oracle::max_abs(oracle::dense(a * b, n) - ma * mb) < 1e-12);
    CHECK(oracle::max_abs(oracle::dense(adjoint(a), n) - ma.adjoint()) < 1e-12);
    CHECK(oracle::max_abs(oracle::dense(commutator(a, b), n) - (ma * mb - mb * ma)) < 1e-12);
    CHECK(oracle::max_abs(to_matrix(a, n) - ma) < 1e-12);
    // homomorphism of the library realization
    CHECK(oracle::max_abs(to_matrix(commutator(a, b), n) - (to_matrix(a, n) * to_matrix(b, n) -
                                                          to_matrix(b, n) * to_matrix(a, n))) < 1e-12);
  }
}

TEST_CASE("property: Jacobi identity and bilinearity") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = oracle::random_operator(rng, 5, 3, 4);
    const auto b = oracle::random_operator(rng, 5, 3, 4);
    const auto c = oracle::random_operator(rng, 5, 3, 4);
    const auto jacobi = commutator(commutator(a, b), c) + commutator(commutator(b, c), a) +
                        commutator(commutator(c, a), b);
    CHECK(jacobi.max_abs() < 1e-12);
    CHECK((commutator(a, b) + commutator(b, a)).max_abs() < 1e-12);
    CHECK(commutator(a + c * Complex(2.0), b).approx_equal(commutator(a, b) + commutator(c, b) * Complex(2.0)));
  }
}

TEST_CASE("property: commutators of generators are generators") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const auto t1 = oracle::random_operator(rng, 6, 3, 4);
    const auto t2 = oracle::random_operator(rng, 6, 3, 4);
    const auto g1 = Generator::from_excitation(t1);
    const auto g2 = Generator::from_excitation(t2);
    CHECK_NOTHROW(Generator(commutator(g1.op(), g2.op())));
  }
}

TEST_CASE("property: number-conserving inputs give number-conserving products") {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = oracle::random_operator(rng, 6, 4, 4, true);
    const auto b = oracle::random_operator(rng, 6, 4, 4, true);
    REQUIRE(a.preserves_particle_number());
    CHECK((a * b).preserves_particle_number());
    CHECK(commutator(a, b).preserves_particle_number());
  }
}
