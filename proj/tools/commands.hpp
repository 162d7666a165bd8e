#pragma once

// The five lipfree subcommands. Each returns the process exit code and
// writes its result through io::write_output; diagnostics go to err.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "lipfree/verify/suites.hpp"

namespace lipfree::cli {

enum ExitCode : int { kOk = 0, kSuiteFailure = 1, kInputError = 2, kSolverError = 3 };

enum class Format { json, csv };

struct RunConfig {
  std::string input;
  std::string output = "-";
  Format format = Format::json;
  int n = 4;
  int n_max = 8;
  std::optional<std::size_t> dim;  // set: R^N mode for `project`
  std::string scheme = "inv-dist";
  double p = 1.0;
  std::uint64_t seed = verify::kDefaultSeed;
  double tol = 1e-9;
  std::string function = "random-lattice";
  std::string points;  // JSON file with sample points
  std::size_t samples = 8;
  std::string suite;  // name prefix filter for verify
};

int cmd_norm(const RunConfig& cfg, std::ostream& err);
int cmd_project(const RunConfig& cfg, std::ostream& err);
int cmd_fdd_table(const RunConfig& cfg, std::ostream& err);
int cmd_verify(const RunConfig& cfg, std::ostream& err);
int cmd_bap(const RunConfig& cfg, std::ostream& err);

}  // namespace lipfree::cli
