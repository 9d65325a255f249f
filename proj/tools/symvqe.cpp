#include <iostream>

#include <CLI11.hpp>

#include "symvqe/cli.hpp"

namespace cli = symvqe::cli;

int main(int argc, char** argv) {
  CLI::App app{"Symmetry-filtered UCCSD pools, Lie closures and statevector VQE"};
  app.set_version_flag("--version", cli::kToolVersion);
  app.require_subcommand(1);

  cli::Options opt;
  std::string prism;
  int max_dim = 0;
  for (const char* name : {"pool-report", "dla", "vqe", "diagnose"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--fcidump", opt.fcidump, "FCIDUMP integral file");
    sub->add_option("--labels", opt.labels, "orbital-label sidecar (JSON)");
    sub->add_option("--prism", prism, "built-in prism Hubbard model t1,t2,u");
    sub->add_option("--group", opt.group, "point group (Cs, C2v, C3v, Td)")->capture_default_str();
    sub->add_option("--subgroup", opt.subgroup, "Abelian subgroup");
    sub->add_option("--filter", opt.filter, "none|abelian|equivariant|integral")->capture_default_str();
    sub->add_option("--epsilon", opt.epsilon, "integral filter threshold")->capture_default_str();
    sub->add_option("--rotate", opt.rotate, "rotate degenerate virtual shells by this angle (rad)");
    sub->add_option("--max-dim", max_dim, "Lie closure dimension cap");
    sub->add_option("--out", opt.out, "report directory")->capture_default_str();
    sub->add_option("--channel", opt.channel, "singles of one shell pair: auto or occ,vir");
    sub->add_option("--max-iterations", opt.max_iterations, "BFGS iteration cap")->capture_default_str();
  }

  try {
    app.parse(argc, argv);
    opt.command = app.get_subcommands().front()->get_name();
    if (!prism.empty()) opt.prism = cli::parse_prism(prism);
    if (app.get_subcommands().front()->count("--max-dim")) opt.max_dim = max_dim;
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : cli::kValidation;
  } catch (const cli::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kValidation;
  }
  return cli::execute(opt, std::cout, std::cerr);
}
