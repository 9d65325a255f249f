#include "symvqe/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <map>
#include <set>
#include <sstream>

#include <openssl/evp.h>

#include "symvqe/dla.hpp"
#include "symvqe/hamiltonian.hpp"
#include "symvqe/orbital_space.hpp"
#include "symvqe/point_group.hpp"
#include "symvqe/pool.hpp"
#include "symvqe/simulator.hpp"
#include "symvqe/vqe.hpp"

namespace symvqe::cli {

using Json = nlohmann::ordered_json;

namespace {

// Torus checks run on the touched modes only, at their Hartree-Fock particle number.
constexpr int kTorusModeCap = 10;
constexpr int kTorusSamples = 10;
constexpr int kDefaultCliMaxDim = 2048;

struct Problem {
  IntegralSet ints;
  OrbitalBasis basis;
  GroupSpec g;
  SubgroupSpec h;
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6e", v);
  return buf;
}

Problem load(const Options& opt) {
  if (opt.prism.has_value() == opt.fcidump.has_value())
    throw ValidationError("exactly one of --prism and --fcidump is required");
  try {
    auto g = builtin_group(opt.group);
    auto h = g.subgroup(opt.subgroup.value_or(default_subgroup(opt.group)));
    if (opt.prism) {
      if (opt.group != "C3v") throw ValidationError("--prism is built on C3v");
      auto pm = build_prism_model((*opt.prism)[0], (*opt.prism)[1], (*opt.prism)[2]);
      return {std::move(pm.ints), std::move(pm.basis), std::move(g), std::move(h)};
    }
    if (!opt.labels) throw ValidationError("--fcidump needs an orbital-label sidecar (--labels)");
    auto ints = read_fcidump(*opt.fcidump);
    const auto labels = load_orbital_labels(*opt.labels);
    if (static_cast<int>(labels.energies.size()) != ints.n_spatial)
      throw ValidationError("sidecar lists " + std::to_string(labels.energies.size()) + " orbitals, FCIDUMP has " +
                            std::to_string(ints.n_spatial));
    auto basis = basis_from_labels(labels, g, h, ints.n_electrons);
    return {std::move(ints), std::move(basis), std::move(g), std::move(h)};
  } catch (const ValidationError&) {
    throw;
  } catch (const std::exception& e) {
    throw ValidationError(e.what());
  }
}

void apply_rotation(Problem& p, double angle) {
  if (angle == 0.0) return;
  bool any = false;
  for (std::size_t s = 0; s < p.basis.shells().size(); ++s) {
    const auto& shell = p.basis.shells()[s];
    if (p.basis.shell_occupied(static_cast<int>(s)) || shell.dim() < 2) continue;
    if (shell.dim() != 2) throw ValidationError("--rotate supports two-component virtual shells only");
    p.ints = rotate_degenerate_shells(p.ints, shell, angle);
    any = true;
  }
  if (!any) throw ValidationError("--rotate: no degenerate virtual shell to rotate");
}

std::pair<int, int> resolve_channel(const OrbitalBasis& basis, const std::string& spec) {
  const auto& shells = basis.shells();
  const int n = static_cast<int>(shells.size());
  if (spec == "auto") {
    for (int o = 0; o < n; ++o) {
      if (!basis.shell_occupied(o) || shells[o].dim() < 2) continue;
      for (int v = 0; v < n; ++v)
        if (!basis.shell_occupied(v) && shells[v].irrep == shells[o].irrep) return {o, v};
    }
    throw ValidationError("--channel auto: no degenerate occupied/virtual shell pair");
  }
  int o = -1, v = -1;
  const auto comma = spec.find(',');
  if (comma == std::string::npos) throw ValidationError("--channel expects 'auto' or 'occ,vir'");
  const auto* b = spec.data();
  if (std::from_chars(b, b + comma, o).ec != std::errc{} ||
      std::from_chars(b + comma + 1, b + spec.size(), v).ec != std::errc{})
    throw ValidationError("--channel expects 'auto' or 'occ,vir'");
  if (o < 0 || o >= n || v < 0 || v >= n) throw ValidationError("--channel shell index out of range");
  if (!basis.shell_occupied(o) || basis.shell_occupied(v)) throw ValidationError("--channel needs occupied,virtual");
  if (shells[o].irrep != shells[v].irrep) throw ValidationError("--channel shells carry different irreps");
  return {o, v};
}

Pool select_pool(const Problem& p, const Options& opt) {
  const auto full = generate_uccsd(p.basis);
  Pool pool;
  if (opt.filter == "none")
    pool = full;
  else if (opt.filter == "abelian")
    pool = filter_abelian(full, p.basis, p.h);
  else if (opt.filter == "equivariant")
    pool = filter_equivariant(full, p.basis, p.g);
  else if (opt.filter == "integral")
    pool = filter_integral(full, p.ints, opt.epsilon);
  else
    throw ValidationError("--filter must be none, abelian, equivariant or integral");
  if (!opt.channel) return pool;
  const auto [o, v] = resolve_channel(p.basis, *opt.channel);
  const auto& occ = p.basis.shells()[o].components;
  const auto& vir = p.basis.shells()[v].components;
  Pool out;
  out.filter_tag = pool.filter_tag + "+channel";
  for (const auto& c : pool.classes)
    if (c.kind == ExcitationKind::single && std::count(occ.begin(), occ.end(), c.occ[0]) &&
        std::count(vir.begin(), vir.end(), c.vir[0]))
      out.classes.push_back(c);
  return out;
}

std::vector<std::string> output_paths(const Options& opt, bool tsv) {
  const auto base = std::filesystem::path(opt.out) / opt.command;
  std::vector<std::string> out{base.string() + ".json"};
  if (tsv) out.push_back(base.string() + ".tsv");
  return out;
}

Json manifest(const Options& opt, bool tsv) {
  Json m;
  m["command"] = opt.command;
  m["tool_version"] = kToolVersion;
  Json inputs = Json::object();
  Json sums = Json::object();
  if (opt.fcidump) {
    inputs["fcidump"] = *opt.fcidump;
    sums[*opt.fcidump] = sha256_file(*opt.fcidump);
  }
  if (opt.labels) {
    inputs["labels"] = *opt.labels;
    sums[*opt.labels] = sha256_file(*opt.labels);
  }
  if (opt.prism) inputs["prism"] = {(*opt.prism)[0], (*opt.prism)[1], (*opt.prism)[2]};
  m["inputs"] = inputs;
  Json cfg;
  cfg["group"] = opt.group;
  cfg["subgroup"] = opt.subgroup.value_or(default_subgroup(opt.group));
  cfg["filter"] = opt.filter;
  cfg["epsilon"] = opt.epsilon;
  cfg["rotate"] = opt.rotate;
  cfg["max_dim"] = opt.max_dim ? Json(*opt.max_dim) : Json(nullptr);
  cfg["channel"] = opt.channel ? Json(*opt.channel) : Json(nullptr);
  cfg["max_iterations"] = opt.max_iterations;
  m["config"] = cfg;
  m["outputs"] = output_paths(opt, tsv);
  m["checksums"] = sums;
  return m;
}

Json class_names(const Pool& p) {
  Json out = Json::array();
  for (const auto& c : p.classes) out.push_back(c.name());
  return out;
}

Report pool_report(const Problem& p, const Options& opt) {
  const auto full = generate_uccsd(p.basis);
  const auto selected = select_pool(p, opt);
  Report r;
  r.json["manifest"] = manifest(opt, true);
  r.json["n_spatial"] = p.ints.n_spatial;
  r.json["n_electrons"] = p.ints.n_electrons;
  Json counts;
  counts["none"] = full.parameter_count();
  counts["abelian"] = filter_abelian(full, p.basis, p.h).parameter_count();
  counts["equivariant"] = filter_equivariant(full, p.basis, p.g).parameter_count();
  counts["integral"] = filter_integral(full, p.ints, opt.epsilon).parameter_count();
  r.json["counts"] = counts;
  r.json["selected"] = {{"filter", selected.filter_tag},
                        {"parameter_count", selected.parameter_count()},
                        {"classes", class_names(selected)}};
  const auto rows = deficit_report(full, selected, p.basis, &p.g, &p.h);
  Json table = Json::array();
  for (const auto& row : rows) {
    const auto& so = p.basis.shells()[row.occ_shell];
    const auto& sv = p.basis.shells()[row.vir_shell];
    table.push_back({{"irrep", row.irrep},
                     {"shell_pair", std::to_string(so.shell_index) + so.irrep + "->" + std::to_string(sv.shell_index) + sv.irrep},
                     {"kind", row.kind == ExcitationKind::single ? "single" : "double"},
                     {"total", row.total},
                     {"retained", row.retained},
                     {"discarded", row.discarded},
                     {"expected_deficit", row.expected_deficit >= 0 ? Json(row.expected_deficit) : Json(nullptr)}});
  }
  r.json["deficit"] = table;
  r.tsv = deficit_report_tsv(rows, p.basis);
  return r;
}

// Order-preserving relabeling onto modes 0..m-1; an automorphism of the canonical relations.
std::vector<Generator> compact_modes(const std::vector<Generator>& gens, const OrbitalBasis& basis, int& n_modes,
                                     int& n_occupied) {
  std::set<int> used;
  for (const auto& g : gens)
    for (const auto& [key, c] : g.op().terms())
      for (const auto& l : key) used.insert(l.mode);
  std::map<int, int> to;
  for (int m : used) to.emplace(m, static_cast<int>(to.size()));
  n_modes = static_cast<int>(to.size());
  n_occupied = 0;
  for (int m : used) n_occupied += basis.occupied(m / 2);
  std::vector<Generator> out;
  for (const auto& g : gens) {
    FermionOperator op;
    for (const auto& [key, c] : g.op().terms()) {
      std::vector<LadderOp> raw;
      for (const auto& l : key) raw.push_back({to.at(l.mode), l.dagger});
      op += FermionOperator::product(raw, c);
    }
    out.emplace_back(op);
  }
  return out;
}

Report dla_report(const Problem& p, const Options& opt) {
  const auto pool = select_pool(p, opt);
  std::vector<Generator> gens;
  for (const auto& c : pool.classes) gens.push_back(c.generator);
  const int cap = opt.max_dim.value_or(kDefaultCliMaxDim);
  if (cap < static_cast<int>(gens.size())) throw ValidationError("--max-dim below the generator count");
  const auto res = lie_closure(gens, kDlaTolerance, cap);

  Report r;
  r.json["manifest"] = manifest(opt, false);
  r.json["filter"] = pool.filter_tag;
  r.json["generator_count"] = pool.parameter_count();
  r.json["dimension"] = res.dimension;
  r.json["is_abelian"] = res.is_abelian;
  r.json["truncated"] = res.truncated;
  Json torus = nullptr;
  int modes = 0, electrons = 0;
  const auto compact = compact_modes(gens, p.basis, modes, electrons);
  if (!res.truncated && res.is_abelian && modes <= kTorusModeCap)
    torus = torus_check(compact, modes, kTorusSamples, electrons);
  r.json["torus_check"] = torus;
  if (opt.channel) {
    const auto [o, v] = resolve_channel(p.basis, *opt.channel);
    const int d = p.basis.shells()[o].dim();
    r.json["channel"] = {{"occ_shell", o}, {"vir_shell", v}, {"d", d}, {"matrix_algebra_dimension", d * d},
                         {"expected_deficit", dimension_deficit(d)}};
  }
  r.exit_code = res.truncated ? kTruncated : kOk;
  return r;
}

Report vqe_report(const Problem& p, const Options& opt) {
  if (opt.max_iterations < 0) throw ValidationError("--max-iterations must be non-negative");
  const auto pool = select_pool(p, opt);
  const auto space = FockSpace::sector(2 * p.ints.n_spatial, p.ints.n_electrons, p.ints.ms2);
  const auto ref = hartree_fock_state(space, p.basis.occupied_spin_orbitals());
  const auto sh = realize(build_hamiltonian(p.ints), space);
  std::optional<double> fci;
  if (space->dim() <= kLanczosCap) fci = fci_reference(sh).energy;
  VQEConfig cfg;
  cfg.max_iterations = opt.max_iterations;
  const auto res = run_vqe(sh, Ansatz(pool, space), ref.amplitudes, cfg, fci);

  Report r;
  r.json["manifest"] = manifest(opt, true);
  r.json["filter"] = pool.filter_tag;
  r.json["parameter_count"] = pool.parameter_count();
  r.json["sector_dimension"] = space->dim();
  r.json["hf_energy"] = energy(ref.amplitudes, sh);
  r.json["fci_energy"] = fci ? Json(*fci) : Json(nullptr);
  Json result;
  result["energy"] = res.energy;
  result["delta_fci_mha"] = res.delta_fci_mha ? Json(*res.delta_fci_mha) : Json(nullptr);
  result["grad_norm"] = res.grad_norm;
  result["iterations"] = res.iterations;
  result["converged"] = res.converged;
  result["message"] = res.message;
  result["theta"] = std::vector<double>(res.theta.data(), res.theta.data() + res.theta.size());
  r.json["result"] = result;
  Json trace = Json::array();
  std::ostringstream tsv;
  tsv << "iteration\tenergy\tgrad_norm\n";
  for (const auto& t : res.trace) {
    trace.push_back({{"iteration", t.iteration}, {"energy", t.energy}, {"grad_norm", t.grad_norm}});
    char line[96];
    std::snprintf(line, sizeof line, "%d\t%.10f\t%.3e\n", t.iteration, t.energy, t.grad_norm);
    tsv << line;
  }
  r.json["trace"] = trace;
  r.tsv = tsv.str();
  return r;
}

Report diagnose_report(const Problem& p, const Options& opt) {
  const auto pool = select_pool(p, opt);
  const auto space = FockSpace::sector(2 * p.ints.n_spatial, p.ints.n_electrons, p.ints.ms2);
  const auto ref = hartree_fock_state(space, p.basis.occupied_spin_orbitals());
  const auto sh = realize(build_hamiltonian(p.ints), space);
  const auto rows = plateau_diagnostic(sh, pool, Ansatz(pool, space), ref.amplitudes, p.basis, p.h);

  Report r;
  r.json["manifest"] = manifest(opt, true);
  r.json["filter"] = pool.filter_tag;
  Json table = Json::array();
  std::ostringstream tsv;
  tsv << "generator\tgradient\tplateau\tabelian_allowed\tcross_component\n";
  int cross = 0, cross_flat = 0;
  for (const auto& row : rows) {
    table.push_back({{"generator", row.generator},
                     {"gradient", row.gradient},
                     {"plateau", row.plateau},
                     {"abelian_allowed", row.abelian_allowed},
                     {"cross_component", row.cross_component}});
    tsv << row.generator << '\t' << sci(row.gradient) << '\t' << row.plateau << '\t' << row.abelian_allowed << '\t'
        << row.cross_component << '\n';
    if (row.cross_component) {
      ++cross;
      cross_flat += row.plateau;
    }
  }
  r.json["rows"] = table;
  r.json["summary"] = {{"generators", rows.size()}, {"cross_component", cross}, {"cross_component_plateau", cross_flat}};
  Json viol = Json::array();
  for (const auto& v : check_selection_rules(p.ints, p.basis, p.h))
    viol.push_back({{"indices", v.indices}, {"value", v.value}});
  r.json["selection_violations"] = viol;
  r.tsv = tsv.str();
  return r;
}

}  // namespace

std::array<double, 3> parse_prism(const std::string& text) {
  std::array<double, 3> out{};
  std::size_t pos = 0;
  for (int k = 0; k < 3; ++k) {
    const auto end = k < 2 ? text.find(',', pos) : text.size();
    if (end == std::string::npos) throw ValidationError("--prism expects t1,t2,u");
    const auto res = std::from_chars(text.data() + pos, text.data() + end, out[k]);
    if (res.ec != std::errc{} || res.ptr != text.data() + end) throw ValidationError("--prism expects t1,t2,u");
    pos = end + 1;
  }
  return out;
}

Report run(const Options& opt) {
  static const std::set<std::string> commands{"pool-report", "dla", "vqe", "diagnose"};
  if (!commands.count(opt.command)) throw ValidationError("unknown command '" + opt.command + "'");
  Problem p = load(opt);
  apply_rotation(p, opt.rotate);
  if (opt.command == "pool-report") return pool_report(p, opt);
  if (opt.command == "dla") return dla_report(p, opt);
  if (opt.command == "vqe") return vqe_report(p, opt);
  return diagnose_report(p, opt);
}

int execute(const Options& opt, std::ostream& log, std::ostream& err) {
  Report r;
  try {
    r = run(opt);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const std::exception& e) {
    err << "runtime error: " << e.what() << '\n';
    return kRuntime;
  }
  const auto paths = output_paths(opt, !r.tsv.empty());
  try {
    std::filesystem::create_directories(opt.out);
    std::ofstream(paths[0], std::ios::binary) << r.json.dump(1) << '\n';
    if (!r.tsv.empty()) std::ofstream(paths[1], std::ios::binary) << r.tsv;
  } catch (const std::exception& e) {
    err << "runtime error: " << e.what() << '\n';
    return kRuntime;
  }
  for (const auto& path : paths) log << "wrote " << path << '\n';
  if (r.exit_code == kTruncated) err << "warning: Lie closure truncated at --max-dim\n";
  return r.exit_code;
}

std::string sha256_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read " + path);
  const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("SHA-256 failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int k = 0; k < len; ++k) {
    out += hex[digest[k] >> 4];
    out += hex[digest[k] & 0xf];
  }
  return out;
}

}  // namespace symvqe::cli
