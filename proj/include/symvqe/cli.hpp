#pragma once

#include <array>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>

#include <json.hpp>

namespace symvqe::cli {

inline constexpr const char* kToolVersion = "symvqe 0.3.0";

enum ExitCode : int { kOk = 0, kValidation = 1, kRuntime = 2, kTruncated = 3 };

/// Bad flags or inputs; maps to exit code 1.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string command;  ///< pool-report | dla | vqe | diagnose
  std::optional<std::string> fcidump;
  std::optional<std::string> labels;
  std::optional<std::array<double, 3>> prism;  ///< t_intra, t_inter, u
  std::string group = "C3v";
  std::optional<std::string> subgroup;
  std::string filter = "none";
  double epsilon = 1e-6;
  double rotate = 0.0;
  std::optional<int> max_dim;
  std::string out = ".";
  /// Restricts the pool to the singles of one degenerate shell pair: "auto" or "occ,vir" shell indices.
  std::optional<std::string> channel;
  int max_iterations = 1000;
};

/// "t1,t2,u" into three numbers; throws ValidationError.
std::array<double, 3> parse_prism(const std::string& text);

struct Report {
  nlohmann::ordered_json json;
  std::string tsv;  ///< empty when the command has no table
  int exit_code = kOk;
};

/// Runs a command without touching the filesystem beyond reading inputs.
Report run(const Options& opt);

/// Runs a command, writes <out>/<command>.json (and .tsv) and returns the exit code.
/// Errors are reported on `err` and mapped to exit codes 1 and 2.
int execute(const Options& opt, std::ostream& log, std::ostream& err);

/// Lowercase hex SHA-256 of a file's bytes.
std::string sha256_file(const std::string& path);

}  // namespace symvqe::cli
