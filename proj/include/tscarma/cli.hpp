#pragma once

// Command-line front end: JSON run configs and subcommand dispatch.
//
//   tscarma <validate|simulate|mc-table|iid|moments|error-bound>
//           --config FILE [--seed U64] [--jobs N] [--full] [--out PATH]
//
// Exit codes: 0 ok, 1 usage, 2 invalid input, 3 numeric failure.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "tscarma/carma.hpp"
#include "tscarma/tempering.hpp"

namespace tscarma::cli {

struct RunConfig {
  FamilyParams model;
  CarmaSpec carma;
  double T = 1.0;
  double kappa = 0.0;
  std::int64_t n = 1;
  std::uint64_t seed = 0;
  double grid_step = 1.0;
  std::string output_path;

  // Experiment settings; all optional in the file.
  std::vector<double> times;  // empty: {min(1, T), T}
  std::int64_t replications = 2000;
  std::int64_t full_replications = 10000;
  std::int64_t sample_size = 1000;
  int bins = 50;
  std::vector<std::int64_t> n_values{10, 100, 1000, 10000};
  std::string scheme;  // "", "general" or "subordinator"
  bool allow_case_ii = false;

  bool operator==(const RunConfig&) const = default;
};

/// Parses and validates; every failure is a ConfigError naming the key path.
RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);

/// Canonical JSON; parse_config(serialize_config(c)) == c.
std::string serialize_config(const RunConfig& config);

TemperingModel build_model(const RunConfig& config);

/// Evaluation times for mc-table, defaulted as documented on RunConfig.
std::vector<double> effective_times(const RunConfig& config);

/// True when TOOL_DETERMINISTIC or TSCARMA_DETERMINISTIC is set to 1.
bool deterministic_env();

int dispatch(int argc, char** argv);

/// Same, with explicit streams (used by tests).
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tscarma::cli
