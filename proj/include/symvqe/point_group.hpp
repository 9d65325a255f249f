#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "symvqe/fermion.hpp"

namespace symvqe {

class OrbitalBasis;

struct IrrepSpec {
  std::string label;
  int dim = 1;
  /// One dim×dim unitary matrix per group element, in element order.
  std::vector<Eigen::MatrixXcd> matrices;

  Complex character(std::size_t element) const { return matrices.at(element).trace(); }
};

/// A one-dimensional irrep of an Abelian subgroup: one character per subgroup element.
struct SubgroupIrrep {
  std::string label;
  std::vector<Complex> characters;
};

/// Abelian subgroup H of a parent group, with its character group.
struct SubgroupSpec {
  std::string name;
  std::string parent;
  /// Indices into the parent's element list.
  std::vector<std::size_t> element_indices;
  std::vector<SubgroupIrrep> irreps;
  std::string trivial_label;

  const SubgroupIrrep& irrep(const std::string& label) const;
  /// Label of Π σ_k^{±1}; `inverse[k]` selects σ_k⁻¹ (= conjugate character).
  std::string product(const std::vector<std::string>& labels, const std::vector<bool>& inverse) const;
  bool is_trivial(const std::vector<std::string>& labels, const std::vector<bool>& inverse) const {
    return product(labels, inverse) == trivial_label;
  }
};

class GroupValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Finite group with its multiplication table and irreducible representation matrices.
class GroupSpec {
 public:
  GroupSpec(std::string name, std::vector<std::string> elements,
            std::vector<std::vector<std::size_t>> mult_table, std::vector<IrrepSpec> irreps,
            std::vector<SubgroupSpec> subgroups = {});

  const std::string& name() const { return name_; }
  std::size_t order() const { return elements_.size(); }
  const std::vector<std::string>& elements() const { return elements_; }
  const std::vector<std::vector<std::size_t>>& mult_table() const { return mult_table_; }
  const std::vector<IrrepSpec>& irreps() const { return irreps_; }
  const std::vector<SubgroupSpec>& subgroups() const { return subgroups_; }

  std::size_t element_index(const std::string& name) const;
  std::size_t identity() const { return identity_; }
  std::size_t inverse(std::size_t g) const { return inverse_.at(g); }
  std::size_t multiply(std::size_t a, std::size_t b) const { return mult_table_[a][b]; }

  const IrrepSpec& irrep(const std::string& label) const;
  bool has_irrep(const std::string& label) const;
  const SubgroupSpec& subgroup(const std::string& name) const;
  /// All built-in groups are abelian iff every irrep is one-dimensional.
  bool is_abelian() const;
  /// The group viewed as its own (Abelian) subgroup; throws for non-Abelian groups.
  SubgroupSpec as_subgroup() const;

 private:
  void validate();

  std::string name_;
  std::vector<std::string> elements_;
  std::vector<std::vector<std::size_t>> mult_table_;
  std::vector<IrrepSpec> irreps_;
  std::vector<SubgroupSpec> subgroups_;
  std::size_t identity_ = 0;
  std::vector<std::size_t> inverse_;
};

/// One of Cs, C2v, C3v, Td.
GroupSpec builtin_group(const std::string& name);
/// Default Abelian subgroup used for filtering: Cs→Cs, C2v→C2v, C3v→Cs, Td→D2.
std::string default_subgroup(const std::string& group);

/// Loads a group from JSON and re-runs every validation check.
GroupSpec load_group_json(const std::string& path);
GroupSpec parse_group_json(const std::string& text);

/// Splits an irrep over an Abelian subgroup by simultaneous diagonalization of the restricted
/// matrices. Returns one subgroup label per joint eigenvector.
std::vector<std::string> restrict_irrep(const GroupSpec& g, const IrrepSpec& irrep, const SubgroupSpec& h);

/// Ad(g)(T): creations transform with D(g), annihilations with D(g)*.
FermionOperator adjoint_action(const GroupSpec& g, std::size_t element, const FermionOperator& t,
                               const OrbitalBasis& basis);

/// (d/|G|) Σ_g χ(g)* Ad(g)(T).
FermionOperator project_onto_irrep(const FermionOperator& t, const GroupSpec& g, const std::string& target,
                                   const OrbitalBasis& basis);

struct IrrepFactor {
  std::string label;
  bool conjugate = false;
};

/// Multiplicity of the trivial irrep in ⊗ factors, by the character inner product.
int a1_multiplicity(const GroupSpec& g, const std::vector<IrrepFactor>& factors);

}  // namespace symvqe
