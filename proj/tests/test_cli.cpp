#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "symvqe/cli.hpp"

using namespace symvqe;

namespace {

const std::string kFixtures = SYMVQE_FIXTURES;

cli::Options nh3(const std::string& command, const std::string& filter) {
  cli::Options o;
  o.command = command;
  o.fcidump = kFixtures + "/nh3_sto3g.fcidump";
  o.labels = kFixtures + "/nh3_sto3g.labels.json";
  o.filter = filter;
  return o;
}

cli::Options prism(const std::string& command, const std::string& filter) {
  cli::Options o;
  o.command = command;
  o.prism = std::array<double, 3>{1.0, 2.0, 2.0};
  o.filter = filter;
  return o;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("symvqe_cli_" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("pool-report on the NH3 fixture") {
  const auto abelian = cli::run(nh3("pool-report", "abelian"));
  CHECK(abelian.exit_code == cli::kOk);
  CHECK(abelian.json["counts"]["none"] == 135);
  CHECK(abelian.json["counts"]["abelian"] == 75);
  CHECK(abelian.json["selected"]["parameter_count"] == 75);
  CHECK(cli::run(nh3("pool-report", "none")).json["selected"]["parameter_count"] == 135);
  const auto& sums = abelian.json["manifest"]["checksums"];
  CHECK(sums.size() == 2);
  for (const auto& [path, digest] : sums.items()) CHECK(digest.get<std::string>() == cli::sha256_file(path));
}

TEST_CASE("pool-report on the prism") {
  const auto r = cli::run(prism("pool-report", "abelian"));
  CHECK(r.json["manifest"]["checksums"].empty());
  const auto& single = r.json["deficit"][0];
  CHECK(single["irrep"] == "E");
  CHECK(single["kind"] == "single");
  CHECK(single["total"] == 4);
  CHECK(single["discarded"] == 2);
  CHECK(r.tsv.find("E\t1E->2E\tsingle\t2\t2\t2\n") != std::string::npos);
}

TEST_CASE("dla on the degenerate channel") {
  auto o = prism("dla", "abelian");
  o.channel = "auto";
  const auto a = cli::run(o);
  CHECK(a.json["dimension"] == 2);
  CHECK(a.json["is_abelian"] == true);
  CHECK(a.json["torus_check"] == true);
  CHECK(a.json["channel"]["expected_deficit"] == 2);

  o.filter = "equivariant";
  const auto e = cli::run(o);
  CHECK(e.json["is_abelian"] == false);
  CHECK(e.json["torus_check"].is_null());

  auto empty = prism("dla", "integral");
  empty.epsilon = 1e9;
  const auto z = cli::run(empty);
  CHECK(z.json["dimension"] == 0);
  CHECK(z.exit_code == cli::kOk);

  auto capped = prism("dla", "abelian");
  capped.max_dim = 40;
  CHECK(cli::run(capped).exit_code == cli::kTruncated);
}

TEST_CASE("vqe with zero iterations echoes Hartree-Fock") {
  auto o = prism("vqe", "abelian");
  o.max_iterations = 0;
  const auto r = cli::run(o);
  CHECK(r.json["result"]["iterations"] == 0);
  CHECK(r.json["result"]["energy"].get<double>() == r.json["hf_energy"].get<double>());
  CHECK(r.json["fci_energy"].get<double>() == doctest::Approx(-9.44329625400956).epsilon(1e-10));
  CHECK(r.json["trace"].size() == 1);
}

TEST_CASE("diagnose flags cross-component rows until the shell is rotated") {
  const auto plain = cli::run(prism("diagnose", "equivariant"));
  CHECK(plain.json["summary"]["cross_component"] == 20);
  CHECK(plain.json["summary"]["cross_component_plateau"] == 20);
  CHECK(plain.json["selection_violations"].empty());

  auto o = prism("diagnose", "equivariant");
  o.rotate = 0.448799;
  const auto turned = cli::run(o);
  CHECK(turned.json["summary"]["cross_component_plateau"].get<int>() < 20);
  CHECK_FALSE(turned.json["selection_violations"].empty());

  o.rotate = 0.0;
  CHECK(cli::run(o).json.dump() == plain.json.dump());
}

TEST_CASE("reports are byte-identical across runs") {
  const auto dir = scratch("determinism");
  auto o = nh3("pool-report", "abelian");
  o.out = dir.string();
  std::ostringstream log, err;
  REQUIRE(cli::execute(o, log, err) == cli::kOk);
  const auto first = slurp(dir / "pool-report.json");
  const auto first_tsv = slurp(dir / "pool-report.tsv");
  REQUIRE(cli::execute(o, log, err) == cli::kOk);
  CHECK(slurp(dir / "pool-report.json") == first);
  CHECK(slurp(dir / "pool-report.tsv") == first_tsv);
  CHECK(first.find("\"manifest\"") != std::string::npos);
  std::filesystem::remove_all(dir);
}

TEST_CASE("exit codes") {
  std::ostringstream log, err;
  cli::Options none;
  none.command = "vqe";
  CHECK(cli::execute(none, log, err) == cli::kValidation);

  auto both = prism("vqe", "none");
  both.fcidump = kFixtures + "/nh3_sto3g.fcidump";
  CHECK(cli::execute(both, log, err) == cli::kValidation);

  auto missing = nh3("pool-report", "none");
  missing.fcidump = "/nonexistent/FCIDUMP";
  CHECK(cli::execute(missing, log, err) == cli::kValidation);

  CHECK(cli::execute(prism("pool-report", "bogus"), log, err) == cli::kValidation);
  auto bad_prism = prism("pool-report", "none");
  bad_prism.prism = std::array<double, 3>{1.0, 0.5, 2.0};
  CHECK(cli::execute(bad_prism, log, err) == cli::kValidation);

  auto unknown = prism("frobnicate", "none");
  CHECK(cli::execute(unknown, log, err) == cli::kValidation);

  auto bad_channel = prism("dla", "abelian");
  bad_channel.channel = "0,1";
  CHECK(cli::execute(bad_channel, log, err) == cli::kValidation);

  CHECK_THROWS_AS(cli::parse_prism("1,2"), cli::ValidationError);
  CHECK_THROWS_AS(cli::parse_prism("1,2,x"), cli::ValidationError);
  const auto p = cli::parse_prism("1,2.5,-3e-1");
  CHECK(p[1] == 2.5);
  CHECK(p[2] == -0.3);
}

TEST_CASE("SHA-256 of a known message") {
  const auto dir = scratch("sha");
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "abc", std::ios::binary) << "abc";
  CHECK(cli::sha256_file((dir / "abc").string()) ==
        "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  std::filesystem::remove_all(dir);
}
