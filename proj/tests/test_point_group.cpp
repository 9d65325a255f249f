#include <doctest.h>

#include <algorithm>
#include <numbers>
#include <random>
#include <set>

#include "oracles.hpp"
#include "symvqe/orbital_space.hpp"
#include "symvqe/point_group.hpp"

using namespace symvqe;

namespace {

// Orbitals 0,1 = 1e (x, y) occupied; 2,3 = 2e (x, y) virtual.
OrbitalBasis c3v_two_e_shells() {
  std::vector<OrbitalShell> shells{{"E", 1, {0, 1}, -1.0}, {"E", 2, {2, 3}, 1.0}};
  return OrbitalBasis(shells, {"A'", "A''", "A'", "A''"}, {true, false});
}

// Mixed basis: a1, e, e, a2.
OrbitalBasis c3v_mixed() {
  std::vector<OrbitalShell> shells{
      {"A1", 1, {0}, -2.0}, {"E", 1, {1, 2}, -1.0}, {"E", 2, {3, 4}, 1.0}, {"A2", 1, {5}, 2.0}};
  return OrbitalBasis(shells, {"A'", "A'", "A''", "A'", "A''", "A''"}, {true, true, false, false});
}

// alpha spin orbital of spatial p
int al(int p) { return OrbitalBasis::spin_orbital(p, 0); }

FermionOperator E(int vir, int occ) { return FermionOperator::excitation(al(vir), al(occ)); }

std::multiset<std::string> as_set(const std::vector<std::string>& v) { return {v.begin(), v.end()}; }

}  // namespace

TEST_CASE("builtin groups") {
  const auto c3v = builtin_group("C3v");
  CHECK(c3v.order() == 6);
  std::vector<int> dims;
  for (const auto& ir : c3v.irreps()) dims.push_back(ir.dim);
  CHECK(dims == std::vector<int>{1, 1, 2});

  const auto cs = builtin_group("Cs");
  CHECK(cs.order() == 2);
  CHECK(cs.irreps().size() == 2);
  CHECK(cs.irreps()[0].label == "A'");
  CHECK(cs.irreps()[1].label == "A''");

  const auto td = builtin_group("Td");
  CHECK(td.order() == 24);
  dims.clear();
  for (const auto& ir : td.irreps()) dims.push_back(ir.dim);
  CHECK(dims == std::vector<int>{1, 1, 2, 3, 3});

  CHECK(builtin_group("C2v").order() == 4);
  CHECK_THROWS_AS(builtin_group("Oh"), std::invalid_argument);
}

TEST_CASE("property: homomorphism and great orthogonality for every builtin group") {
  for (const auto* name : {"Cs", "C2v", "C3v", "Td"}) {
    const auto g = builtin_group(name);
    for (const auto& ir : g.irreps()) {
      for (std::size_t a = 0; a < g.order(); ++a)
        for (std::size_t b = 0; b < g.order(); ++b)
          CHECK(oracle::max_abs(ir.matrices[a] * ir.matrices[b] - ir.matrices[g.multiply(a, b)]) < 1e-12);
    }
    for (const auto& l : g.irreps()) {
      for (const auto& m : g.irreps()) {
        Complex s{};
        for (std::size_t e = 0; e < g.order(); ++e) s += l.character(e) * std::conj(m.character(e));
        s /= static_cast<double>(g.order());
        CHECK(std::abs(s - Complex(l.label == m.label ? 1.0 : 0.0)) < 1e-12);
      }
    }
  }
}

TEST_CASE("Td character table") {
  const auto td = builtin_group("Td");
  // class representatives: E, C3, C2, S4, sigma_d
  const std::vector<std::string> reps{"E", "C3_1", "C2z", "S4_1", "sd_1"};
  const std::map<std::string, std::vector<double>> table{{"A1", {1, 1, 1, 1, 1}},   {"A2", {1, 1, 1, -1, -1}},
                                                         {"E", {2, -1, 2, 0, 0}},   {"T1", {3, 0, -1, 1, -1}},
                                                         {"T2", {3, 0, -1, -1, 1}}};
  for (const auto& [label, chars] : table)
    for (std::size_t k = 0; k < reps.size(); ++k)
      CHECK(td.irrep(label).character(td.element_index(reps[k])).real() == doctest::Approx(chars[k]));
}

TEST_CASE("restrict_irrep") {
  const auto c3v = builtin_group("C3v");
  const auto& cs = c3v.subgroup("Cs");
  CHECK(as_set(restrict_irrep(c3v, c3v.irrep("E"), cs)) == std::multiset<std::string>{"A'", "A''"});
  CHECK(restrict_irrep(c3v, c3v.irrep("A1"), cs) == std::vector<std::string>{"A'"});
  CHECK(restrict_irrep(c3v, c3v.irrep("A2"), cs) == std::vector<std::string>{"A''"});

  const auto td = builtin_group("Td");
  const auto t2 = restrict_irrep(td, td.irrep("T2"), td.subgroup("D2"));
  REQUIRE(t2.size() == 3);
  CHECK(std::set<std::string>(t2.begin(), t2.end()).size() == 3);
}

TEST_CASE("multidimensional irreps split into distinct labels") {
  const auto c3v = builtin_group("C3v");
  const auto e = restrict_irrep(c3v, c3v.irrep("E"), c3v.subgroup("Cs"));
  CHECK(std::set<std::string>(e.begin(), e.end()).size() >= 2);

  const auto td = builtin_group("Td");
  for (const auto* label : {"T1", "T2"}) {
    const auto r = restrict_irrep(td, td.irrep(label), td.subgroup("D2"));
    CHECK(std::set<std::string>(r.begin(), r.end()).size() >= 2);
  }
  // D2 is the kernel of Td -> S3, so the E irrep of Td does not split over it.
  const auto r = restrict_irrep(td, td.irrep("E"), td.subgroup("D2"));
  CHECK(r == std::vector<std::string>{"A", "A"});
}

TEST_CASE("adjoint_action") {
  const auto c3v = builtin_group("C3v");
  const auto basis = c3v_two_e_shells();
  const auto t = E(2, 0) + E(3, 1) * Complex(0.3);
  CHECK(adjoint_action(c3v, c3v.identity(), t, basis).approx_equal(t));

  const auto ey = FermionOperator::ladder(cre(al(3)));
  CHECK(adjoint_action(c3v, c3v.element_index("sigma_v"), ey, basis).approx_equal(-ey));

  const std::size_t c3 = c3v.element_index("C3");
  const double c = -0.5, s = std::sqrt(3.0) / 2.0;
  const auto rotated = adjoint_action(c3v, c3, E(2, 0), basis);
  const auto expected = E(2, 0) * Complex(c * c) + E(2, 1) * Complex(c * s) + E(3, 0) * Complex(s * c) +
                        E(3, 1) * Complex(s * s);
  CHECK(rotated.approx_equal(expected));

  // dense oracle: R = exp(sum K_{nu mu} a+_nu a_mu) with K = log of the 120 degree rotation
  const int n = 8;
  const double angle = 2.0 * std::numbers::pi / 3.0;
  FermionOperator k;
  for (int shell : {0, 2}) {
    k += FermionOperator::excitation(al(shell + 1), al(shell), angle);
    k += FermionOperator::excitation(al(shell), al(shell + 1), -angle);
  }
  const Eigen::MatrixXcd r = oracle::dense(k, n).exp();
  const Eigen::MatrixXcd lhs = r * oracle::dense(E(2, 0), n) * r.adjoint();
  CHECK(oracle::max_abs(lhs - oracle::dense(rotated, n)) < 1e-12);
}

TEST_CASE("adjoint_action rejects unlabeled modes") {
  const auto c3v = builtin_group("C3v");
  CHECK_THROWS_AS(adjoint_action(c3v, 1, FermionOperator::ladder(cre(20)), c3v_two_e_shells()), std::out_of_range);
}

TEST_CASE("projections of the four cross-channel singles") {
  const auto c3v = builtin_group("C3v");
  const auto basis = c3v_two_e_shells();
  const auto exx = E(2, 0), eyy = E(3, 1), exy = E(2, 1), eyx = E(3, 0);

  CHECK(project_onto_irrep(exx, c3v, "A1", basis).approx_equal((exx + eyy) * Complex(0.5), 1e-12));
  CHECK(project_onto_irrep(exx, c3v, "A2", basis).max_abs() < 1e-12);
  CHECK(project_onto_irrep(exy, c3v, "A2", basis).approx_equal((exy - eyx) * Complex(0.5), 1e-12));
  CHECK(project_onto_irrep(exx, c3v, "E", basis).approx_equal((exx - eyy) * Complex(0.5), 1e-12));
}

TEST_CASE("property: projections are idempotent and complete") {
  const auto c3v = builtin_group("C3v");
  const auto basis = c3v_mixed();
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 8; ++trial) {
    const auto t = oracle::random_operator(rng, basis.n_spin_orbitals(), 3, 4);
    FermionOperator sum;
    for (const auto& ir : c3v.irreps()) {
      const auto p = project_onto_irrep(t, c3v, ir.label, basis);
      CHECK(project_onto_irrep(p, c3v, ir.label, basis).approx_equal(p, 1e-12));
      sum += p;
    }
    CHECK(sum.approx_equal(t, 1e-12));
  }
}

TEST_CASE("a1_multiplicity") {
  const auto c3v = builtin_group("C3v");
  CHECK(a1_multiplicity(c3v, {{"E", false}, {"E", true}, {"E", false}, {"E", true}}) == 3);
  CHECK(a1_multiplicity(c3v, {{"A1", false}, {"A1", true}, {"A1", false}, {"A1", true}}) == 1);
  CHECK(a1_multiplicity(c3v, {{"E", false}, {"E", true}}) == 1);
  CHECK(a1_multiplicity(c3v, {{"E", false}, {"A1", true}}) == 0);
  const auto td = builtin_group("Td");
  CHECK(a1_multiplicity(td, {{"T2", false}, {"T2", true}, {"T2", false}, {"T2", true}}) >= 2);
}

TEST_CASE("group JSON loader") {
  const auto g = load_group_json(std::string(SYMVQE_FIXTURES) + "/c3v_group.json");
  CHECK(g.order() == 6);
  CHECK(g.irrep("E").dim == 2);
  const auto builtin = builtin_group("C3v");
  for (std::size_t e = 0; e < 6; ++e)
    CHECK(oracle::max_abs(g.irrep("E").matrices[e] - builtin.irrep("E").matrices[e]) < 1e-15);
  CHECK(as_set(restrict_irrep(g, g.irrep("E"), g.subgroup("Cs"))) == std::multiset<std::string>{"A'", "A''"});

  CHECK_THROWS_AS(load_group_json(std::string(SYMVQE_FIXTURES) + "/c3v_group_broken.json"), GroupValidationError);
  CHECK_THROWS_AS(parse_group_json("{\"name\": \"x\"}"), GroupValidationError);
  CHECK_THROWS_AS(parse_group_json(
                      R"({"name":"bad","elements":["E","a"],"mult_table":[[0,1],[1,1]],"irreps":[]})"),
                  GroupValidationError);
}

TEST_CASE("subgroup label products") {
  const auto c3v = builtin_group("C3v");
  const auto& cs = c3v.subgroup("Cs");
  CHECK(cs.product({"A''", "A'"}, {false, true}) == "A''");
  CHECK(cs.is_trivial({"A''", "A''"}, {false, true}));
  const auto td = builtin_group("Td");
  const auto& d2 = td.subgroup("D2");
  CHECK(d2.product({"B1", "B2"}, {false, false}) == "B3");
}
