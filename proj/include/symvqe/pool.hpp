#pragma once

#include <string>
#include <vector>

#include "symvqe/fermion.hpp"
#include "symvqe/orbital_space.hpp"

namespace symvqe {

class GroupSpec;
struct SubgroupSpec;
struct IntegralSet;

enum class ExcitationKind { single, double_ };

/// One spin-orbital excitation a†_a a_i or a†_a a_i a†_b a_j.
struct Excitation {
  ExcitationKind kind = ExcitationKind::single;
  std::vector<int> occ;  ///< spin orbitals i (, j)
  std::vector<int> vir;  ///< spin orbitals a (, b)
  FermionOperator t;
};

/// Spin-complemented class sharing one amplitude.
///
/// Singles i→a carry the αα and ββ members. Doubles are built from two spatial singles
/// P = (i→a), Q = (j→b); the class operator is E_ai E_bj with E_ai = Σ_σ a†_aσ a_iσ, so its
/// members are every spin assignment that survives normal ordering.
struct ExcitationClass {
  ExcitationKind kind = ExcitationKind::single;
  std::vector<int> occ;  ///< spatial i (, j)
  std::vector<int> vir;  ///< spatial a (, b), paired with occ entry by entry
  std::vector<Excitation> members;
  Generator generator{FermionOperator{}};

  bool paired() const { return kind == ExcitationKind::double_ && occ[0] == occ[1] && vir[0] == vir[1]; }
  std::string name() const;
  friend bool operator==(const ExcitationClass& a, const ExcitationClass& b) {
    return a.kind == b.kind && a.occ == b.occ && a.vir == b.vir;
  }
};

struct Pool {
  std::vector<ExcitationClass> classes;
  std::string filter_tag = "none";

  int parameter_count() const { return static_cast<int>(classes.size()); }
  bool contains(const ExcitationClass& c) const;
};

/// All spin-preserving singles and doubles over the partition, singles first.
Pool generate_uccsd(const OrbitalBasis& basis);

/// Keeps classes whose subgroup label product σ(a)σ(b)σ(i)⁻¹σ(j)⁻¹ is trivial.
bool abelian_allowed(const ExcitationClass& c, const OrbitalBasis& basis, const SubgroupSpec& h);
Pool filter_abelian(const Pool& p, const OrbitalBasis& basis, const SubgroupSpec& h);

/// Keeps singles with ρ(a) = ρ(i) and doubles whose irrep product contains A1.
bool equivariant_allowed(const ExcitationClass& c, const OrbitalBasis& basis, const GroupSpec& g);
Pool filter_equivariant(const Pool& p, const OrbitalBasis& basis, const GroupSpec& g);

/// Largest matching integral magnitude over the class members: |h_ai| for singles, the
/// antisymmetrized (ai|bj) - (aj|bi) for same-spin and (ai|bj) for opposite-spin doubles.
double integral_magnitude(const ExcitationClass& c, const IntegralSet& ints);
Pool filter_integral(const Pool& p, const IntegralSet& ints, double epsilon);

struct DeficitRow {
  std::string irrep;
  int occ_shell = 0;  ///< index into basis.shells()
  int vir_shell = 0;
  ExcitationKind kind = ExcitationKind::single;
  int total = 0;
  int retained = 0;
  int discarded = 0;
  int expected_deficit = -1;  ///< -1 when no prediction applies
};

/// Per occupied/virtual shell pair of the same multidimensional irrep, counts of spatial
/// singles (d²) and ordered double tuples (d⁴) whose class survives in `filtered`.
///
/// Expected single deficits are d(d-1). Expected double deficits come from the subgroup
/// characters of the irrep when `g` and `h` are given.
std::vector<DeficitRow> deficit_report(const Pool& full, const Pool& filtered, const OrbitalBasis& basis,
                                       const GroupSpec* g = nullptr, const SubgroupSpec* h = nullptr);

std::string deficit_report_tsv(const std::vector<DeficitRow>& rows, const OrbitalBasis& basis);

}  // namespace symvqe
