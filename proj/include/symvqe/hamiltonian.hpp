#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "symvqe/fermion.hpp"
#include "symvqe/orbital_space.hpp"

namespace symvqe {

struct SubgroupSpec;

/// One- and two-electron integrals over real spatial orbitals. h2 is in chemists' notation
/// (pq|rs) and stored densely with full 8-fold symmetry.
struct IntegralSet {
  int n_spatial = 0;
  int n_electrons = 0;
  int ms2 = 0;
  Eigen::MatrixXd h1;
  std::vector<double> h2;
  double e_core = 0.0;
  std::vector<int> orbsym;  ///< FCIDUMP ORBSYM, may be empty

  IntegralSet() = default;
  IntegralSet(int n_spatial, int n_electrons);

  double& eri(int p, int q, int r, int s) { return h2[index(p, q, r, s)]; }
  double eri(int p, int q, int r, int s) const { return h2[index(p, q, r, s)]; }
  /// Sets (pq|rs) and its seven symmetry partners.
  void set_eri(int p, int q, int r, int s, double v);

 private:
  std::size_t index(int p, int q, int r, int s) const {
    const std::size_t n = static_cast<std::size_t>(n_spatial);
    return ((static_cast<std::size_t>(p) * n + q) * n + r) * n + s;
  }
};

class FcidumpError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

IntegralSet read_fcidump(const std::string& path);
IntegralSet parse_fcidump(const std::string& text);
std::string fcidump_to_string(const IntegralSet& ints);
void write_fcidump(const IntegralSet& ints, const std::string& path);

struct MolecularHamiltonian {
  FermionOperator op;  ///< electronic part, without e_core
  double e_core = 0.0;
  int n_electrons = 0;
  int n_modes = 0;
};

/// H = Σ h_pq a†_pσ a_qσ + ½ Σ (pr|qs) a†_pσ a†_qτ a_sτ a_rσ with interleaved spin orbitals.
MolecularHamiltonian build_hamiltonian(const IntegralSet& ints);

/// Six-site triangular prism Hubbard model in its symmetry-adapted molecular-orbital basis.
struct PrismModel {
  IntegralSet ints;
  OrbitalBasis basis;
  Eigen::MatrixXd mo;  ///< site × orbital coefficients
  std::vector<double> energies;
};

/// Site-basis hopping matrix: -t_intra on ring edges, -t_inter between site k and k+3.
Eigen::MatrixXd prism_hopping(double t_intra, double t_inter);

/// Builds the prism at 6 electrons. Throws std::invalid_argument when an A1 level meets an E
/// level or the E level at the Fermi energy would be split.
PrismModel build_prism_model(double t_intra, double t_inter, double u);

struct SelectionViolation {
  std::vector<int> indices;  ///< (p, q) or (p, q, r, s)
  double value = 0.0;
};

/// Integrals above `threshold` whose subgroup label product is nontrivial.
std::vector<SelectionViolation> check_selection_rules(const IntegralSet& ints, const OrbitalBasis& basis,
                                                      const SubgroupSpec& h, double threshold = 1e-10);

/// Transforms all integrals by the orbital rotation φ'_μ = Σ_ν U(ν, μ) φ_ν on the shell.
IntegralSet rotate_degenerate_shells(const IntegralSet& ints, const OrbitalShell& shell, const Eigen::MatrixXd& u);
/// Planar rotation of a two-component shell.
IntegralSet rotate_degenerate_shells(const IntegralSet& ints, const OrbitalShell& shell, double angle);

/// Full orbital transformation by an orthogonal n × n matrix (columns are new orbitals).
IntegralSet transform_integrals(const IntegralSet& ints, const Eigen::MatrixXd& c);

}  // namespace symvqe
