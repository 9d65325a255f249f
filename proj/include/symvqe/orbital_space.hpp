#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace symvqe {

class GroupSpec;
struct SubgroupSpec;

inline constexpr double kDegeneracyThreshold = 1e-6;

/// d_λ degenerate spatial orbitals transforming together under one irrep of G.
struct OrbitalShell {
  std::string irrep;  ///< empty until assigned
  int shell_index = 0;
  /// Spatial orbital indices; position μ is the irrep basis component μ.
  std::vector<int> components;
  double energy = 0.0;

  int dim() const { return static_cast<int>(components.size()); }
};

class PartitionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Symmetry-labeled spatial orbitals with an occupied/virtual shell partition.
///
/// Spin orbitals are interleaved: spin orbital 2p is p-alpha, 2p+1 is p-beta.
class OrbitalBasis {
 public:
  OrbitalBasis(std::vector<OrbitalShell> shells, std::vector<std::string> h_labels,
               std::vector<bool> shell_occupied = {});

  int n_spatial() const { return static_cast<int>(h_labels_.size()); }
  int n_spin_orbitals() const { return 2 * n_spatial(); }
  int n_electrons() const;

  const std::vector<OrbitalShell>& shells() const { return shells_; }
  const OrbitalShell& shell_of(int p) const { return shells_[shell_of_[p]]; }
  int shell_index_of(int p) const { return shell_of_[p]; }
  int component_of(int p) const { return component_of_[p]; }
  const std::string& h_label(int p) const { return h_labels_[p]; }
  const std::vector<std::string>& h_labels() const { return h_labels_; }
  const std::string& g_irrep(int p) const { return shell_of(p).irrep; }
  bool has_g_labels() const;

  bool shell_occupied(int s) const { return shell_occupied_[s]; }
  bool occupied(int p) const { return shell_occupied_[shell_of_[p]]; }
  std::vector<int> occupied_orbitals() const;
  std::vector<int> virtual_orbitals() const;
  std::vector<int> occupied_spin_orbitals() const;

  /// Shell counts N_occ(λ), N_vir(λ).
  std::map<std::string, int> occupied_shell_counts() const;
  std::map<std::string, int> virtual_shell_counts() const;

  static int spin_orbital(int spatial, int spin) { return 2 * spatial + spin; }

 private:
  std::vector<OrbitalShell> shells_;
  std::vector<std::string> h_labels_;
  std::vector<bool> shell_occupied_;
  std::vector<int> shell_of_;
  std::vector<int> component_of_;
};

/// Groups orbitals whose energies agree within `threshold` and whose H-labels differ into
/// multi-component shells; the rest become one-dimensional shells. Energies must be ascending.
std::vector<OrbitalShell> detect_degenerate_shells(const std::vector<double>& energies,
                                                   const std::vector<std::string>& h_labels,
                                                   double threshold = kDegeneracyThreshold);

/// Names each shell's G-irrep from its H-label content (must be unambiguous) and orders the
/// components to follow the irrep's basis order.
std::vector<OrbitalShell> assign_irreps(std::vector<OrbitalShell> shells, const std::vector<std::string>& h_labels,
                                        const GroupSpec& g, const SubgroupSpec& h);

/// Aufbau filling of the lowest n_electrons/2 spatial orbitals; never splits a shell.
OrbitalBasis partition(const OrbitalBasis& basis, int n_electrons);

/// Orbital-label sidecar accompanying an FCIDUMP.
struct OrbitalLabels {
  std::vector<double> energies;
  std::vector<std::string> h_labels;
  /// Optional (irrep, component) per orbital.
  std::optional<std::vector<std::pair<std::string, int>>> g_labels;
};

OrbitalLabels load_orbital_labels(const std::string& path);
OrbitalLabels parse_orbital_labels(const std::string& json_text);
std::string orbital_labels_to_json(const OrbitalLabels& labels);

/// Shells from the sidecar (g_labels when present, else inferred through the subgroup), partitioned.
OrbitalBasis basis_from_labels(const OrbitalLabels& labels, const GroupSpec& g, const SubgroupSpec& h,
                               int n_electrons, double threshold = kDegeneracyThreshold);

}  // namespace symvqe
