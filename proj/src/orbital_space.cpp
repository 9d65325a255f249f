#include "symvqe/orbital_space.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "symvqe/point_group.hpp"

namespace symvqe {

OrbitalBasis::OrbitalBasis(std::vector<OrbitalShell> shells, std::vector<std::string> h_labels,
                           std::vector<bool> shell_occupied)
    : shells_(std::move(shells)), h_labels_(std::move(h_labels)), shell_occupied_(std::move(shell_occupied)) {
  if (shell_occupied_.empty()) shell_occupied_.assign(shells_.size(), false);
  if (shell_occupied_.size() != shells_.size())
    throw std::invalid_argument("OrbitalBasis: occupation flags do not match shells");
  const int n = n_spatial();
  shell_of_.assign(n, -1);
  component_of_.assign(n, -1);
  for (std::size_t s = 0; s < shells_.size(); ++s) {
    if (shells_[s].components.empty()) throw std::invalid_argument("OrbitalBasis: empty shell");
    for (std::size_t mu = 0; mu < shells_[s].components.size(); ++mu) {
      const int p = shells_[s].components[mu];
      if (p < 0 || p >= n) throw std::invalid_argument("OrbitalBasis: shell component out of range");
      if (shell_of_[p] != -1) throw std::invalid_argument("OrbitalBasis: orbital in two shells");
      shell_of_[p] = static_cast<int>(s);
      component_of_[p] = static_cast<int>(mu);
    }
  }
  for (int p = 0; p < n; ++p)
    if (shell_of_[p] == -1) throw std::invalid_argument("OrbitalBasis: orbital " + std::to_string(p) + " not in a shell");
}

int OrbitalBasis::n_electrons() const { return 2 * static_cast<int>(occupied_orbitals().size()); }

bool OrbitalBasis::has_g_labels() const {
  return std::all_of(shells_.begin(), shells_.end(), [](const OrbitalShell& s) { return !s.irrep.empty(); });
}

std::vector<int> OrbitalBasis::occupied_orbitals() const {
  std::vector<int> out;
  for (int p = 0; p < n_spatial(); ++p)
    if (occupied(p)) out.push_back(p);
  return out;
}

std::vector<int> OrbitalBasis::virtual_orbitals() const {
  std::vector<int> out;
  for (int p = 0; p < n_spatial(); ++p)
    if (!occupied(p)) out.push_back(p);
  return out;
}

std::vector<int> OrbitalBasis::occupied_spin_orbitals() const {
  std::vector<int> out;
  for (int p : occupied_orbitals()) {
    out.push_back(spin_orbital(p, 0));
    out.push_back(spin_orbital(p, 1));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::map<std::string, int> OrbitalBasis::occupied_shell_counts() const {
  std::map<std::string, int> counts;
  for (std::size_t s = 0; s < shells_.size(); ++s)
    if (shell_occupied_[s]) ++counts[shells_[s].irrep];
  return counts;
}

std::map<std::string, int> OrbitalBasis::virtual_shell_counts() const {
  std::map<std::string, int> counts;
  for (std::size_t s = 0; s < shells_.size(); ++s)
    if (!shell_occupied_[s]) ++counts[shells_[s].irrep];
  return counts;
}

std::vector<OrbitalShell> detect_degenerate_shells(const std::vector<double>& energies,
                                                   const std::vector<std::string>& h_labels, double threshold) {
  if (energies.size() != h_labels.size())
    throw std::invalid_argument("detect_degenerate_shells: energies and labels differ in length");
  for (std::size_t i = 1; i < energies.size(); ++i)
    if (energies[i] < energies[i - 1] - threshold)
      throw std::invalid_argument("detect_degenerate_shells: energies must be ascending");

  std::vector<OrbitalShell> shells;
  auto push = [&](std::vector<int> comps) {
    double e = 0.0;
    for (int p : comps) e += energies[p];
    shells.push_back({"", static_cast<int>(shells.size()), std::move(comps), e / static_cast<double>(comps.size())});
  };

  const int n = static_cast<int>(energies.size());
  int start = 0;
  while (start < n) {
    int end = start + 1;
    while (end < n && std::abs(energies[end] - energies[start]) < threshold) ++end;
    std::vector<int> cluster(end - start);
    std::iota(cluster.begin(), cluster.end(), start);
    std::set<std::string> distinct;
    for (int p : cluster) distinct.insert(h_labels[p]);
    if (cluster.size() == 1 || distinct.size() == cluster.size()) {
      push(cluster);
    } else if (cluster.size() == 2) {
      // same-label pair: accidental degeneracy, not a split multidimensional irrep
      push({cluster[0]});
      push({cluster[1]});
    } else {
      throw std::runtime_error("detect_degenerate_shells: " + std::to_string(cluster.size()) +
                               "-fold near-degeneracy at orbital " + std::to_string(start) + " spans only " +
                               std::to_string(distinct.size()) + " distinct labels; shell assignment is ambiguous");
    }
    start = end;
  }
  return shells;
}

namespace {

// Subgroup label of each basis component of an irrep whose restricted matrices are diagonal.
std::vector<std::string> component_labels(const IrrepSpec& ir, const SubgroupSpec& h) {
  std::vector<std::string> out;
  for (int mu = 0; mu < ir.dim; ++mu) {
    std::vector<Complex> chi;
    for (auto e : h.element_indices) {
      const auto& m = ir.matrices.at(e);
      for (int nu = 0; nu < ir.dim; ++nu)
        if (nu != mu && std::abs(m(nu, mu)) > 1e-9)
          throw std::runtime_error("irrep " + ir.label + " basis is not adapted to subgroup " + h.name);
      chi.push_back(m(mu, mu));
    }
    std::string found;
    for (const auto& s : h.irreps) {
      bool same = true;
      for (std::size_t k = 0; k < chi.size(); ++k) same = same && std::abs(chi[k] - s.characters[k]) < 1e-9;
      if (same) found = s.label;
    }
    if (found.empty()) throw std::runtime_error("irrep " + ir.label + " component matches no subgroup irrep");
    out.push_back(found);
  }
  return out;
}

void order_components(OrbitalShell& shell, const std::vector<std::string>& h_labels, const IrrepSpec& ir,
                      const SubgroupSpec& h) {
  if (shell.dim() == 1) return;
  const auto wanted = component_labels(ir, h);
  std::vector<int> ordered;
  for (const auto& label : wanted) {
    auto it = std::find_if(shell.components.begin(), shell.components.end(),
                           [&](int p) { return h_labels[p] == label; });
    if (it == shell.components.end())
      throw std::runtime_error("shell components do not match the restriction of " + ir.label);
    ordered.push_back(*it);
  }
  shell.components = std::move(ordered);
}

void number_shells(std::vector<OrbitalShell>& shells) {
  std::map<std::string, int> seen;
  for (auto& s : shells) s.shell_index = ++seen[s.irrep];
}

}  // namespace

std::vector<OrbitalShell> assign_irreps(std::vector<OrbitalShell> shells, const std::vector<std::string>& h_labels,
                                        const GroupSpec& g, const SubgroupSpec& h) {
  for (auto& shell : shells) {
    std::vector<std::string> labels;
    for (int p : shell.components) labels.push_back(h_labels.at(p));
    std::sort(labels.begin(), labels.end());
    std::vector<const IrrepSpec*> candidates;
    for (const auto& ir : g.irreps()) {
      if (ir.dim != shell.dim()) continue;
      auto restricted = restrict_irrep(g, ir, h);
      std::sort(restricted.begin(), restricted.end());
      if (restricted == labels) candidates.push_back(&ir);
    }
    if (candidates.empty())
      throw std::runtime_error("no irrep of " + g.name() + " restricts to the labels of the shell at orbital " +
                               std::to_string(shell.components.front()));
    if (candidates.size() > 1)
      throw std::runtime_error("irrep of the shell at orbital " + std::to_string(shell.components.front()) +
                               " is ambiguous under " + h.name + "; supply g_labels");
    shell.irrep = candidates.front()->label;
    order_components(shell, h_labels, *candidates.front(), h);
  }
  number_shells(shells);
  return shells;
}

OrbitalBasis partition(const OrbitalBasis& basis, int n_electrons) {
  if (n_electrons < 0 || n_electrons % 2 != 0)
    throw PartitionError("partition: closed-shell reference needs an even, non-negative electron count");
  const int n_occ = n_electrons / 2;
  if (n_occ > basis.n_spatial()) throw PartitionError("partition: more electrons than spin orbitals");

  std::vector<int> order(basis.n_spatial());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return basis.shell_of(a).energy < basis.shell_of(b).energy; });
  std::vector<bool> orbital_occ(basis.n_spatial(), false);
  for (int k = 0; k < n_occ; ++k) orbital_occ[order[k]] = true;

  std::vector<bool> shell_occ(basis.shells().size(), false);
  for (std::size_t s = 0; s < basis.shells().size(); ++s) {
    const auto& comps = basis.shells()[s].components;
    const auto n_in = std::count_if(comps.begin(), comps.end(), [&](int p) { return orbital_occ[p]; });
    if (n_in != 0 && n_in != static_cast<long>(comps.size()))
      throw PartitionError("partition: degenerate shell at orbital " + std::to_string(comps.front()) +
                           " straddles the Fermi level");
    shell_occ[s] = n_in != 0;
  }
  return OrbitalBasis(basis.shells(), basis.h_labels(), shell_occ);
}

OrbitalLabels parse_orbital_labels(const std::string& json_text) {
  OrbitalLabels out;
  try {
    const auto j = nlohmann::json::parse(json_text);
    out.energies = j.at("energies").get<std::vector<double>>();
    out.h_labels = j.at("h_labels").get<std::vector<std::string>>();
    if (j.contains("g_labels") && !j["g_labels"].is_null()) {
      std::vector<std::pair<std::string, int>> g;
      for (const auto& e : j["g_labels"]) g.emplace_back(e.at(0).get<std::string>(), e.at(1).get<int>());
      out.g_labels = std::move(g);
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("orbital-label sidecar: ") + e.what());
  }
  if (out.energies.size() != out.h_labels.size())
    throw std::runtime_error("orbital-label sidecar: energies and h_labels differ in length");
  if (out.g_labels && out.g_labels->size() != out.energies.size())
    throw std::runtime_error("orbital-label sidecar: g_labels has the wrong length");
  return out;
}

OrbitalLabels load_orbital_labels(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open orbital-label sidecar " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_orbital_labels(ss.str());
}

std::string orbital_labels_to_json(const OrbitalLabels& labels) {
  nlohmann::json j;
  j["energies"] = labels.energies;
  j["h_labels"] = labels.h_labels;
  if (labels.g_labels) {
    j["g_labels"] = nlohmann::json::array();
    for (const auto& [irrep, mu] : *labels.g_labels) j["g_labels"].push_back({irrep, mu});
  }
  return j.dump(1);
}

OrbitalBasis basis_from_labels(const OrbitalLabels& labels, const GroupSpec& g, const SubgroupSpec& h,
                               int n_electrons, double threshold) {
  auto shells = detect_degenerate_shells(labels.energies, labels.h_labels, threshold);
  if (labels.g_labels) {
    const auto& gl = *labels.g_labels;
    for (auto& shell : shells) {
      const auto& irrep = gl[shell.components.front()].first;
      if (!g.has_irrep(irrep)) throw std::runtime_error("sidecar irrep '" + irrep + "' not in " + g.name());
      if (g.irrep(irrep).dim != shell.dim())
        throw std::runtime_error("sidecar irrep '" + irrep + "' dimension disagrees with the detected shell");
      std::vector<int> ordered(shell.dim(), -1);
      for (int p : shell.components) {
        if (gl[p].first != irrep) throw std::runtime_error("sidecar g_labels split a degenerate shell");
        const int mu = gl[p].second;
        if (mu < 0 || mu >= shell.dim() || ordered[mu] != -1)
          throw std::runtime_error("sidecar g_labels components are invalid");
        ordered[mu] = p;
      }
      shell.irrep = irrep;
      shell.components = ordered;
    }
    number_shells(shells);
  } else {
    shells = assign_irreps(std::move(shells), labels.h_labels, g, h);
  }
  return partition(OrbitalBasis(std::move(shells), labels.h_labels), n_electrons);
}

}  // namespace symvqe
