// Command-line workbench: measure tables, figure data, invariant checks and
// the zero cache.
#pragma once

#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "hyperdot/systems.hpp"

namespace hyperdot::cli {

enum ExitCode { kOk = 0, kComputeFailure = 1, kConfigError = 2 };

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;  // table | figure | check | zeros
  int figure = 0;
  SystemKind system = SystemKind::DirichletDot;
  bool system_set = false;  // --bc/--system given explicitly
  std::vector<int> dims;
  int n = 1;  // state index; maximal index for check; zero count for zeros
  int l = 0;
  double alpha_min = 0.5, alpha_max = 3.0;
  int alpha_points = 0;  // 0 selects the command default
  bool alpha_log = false;
  std::string out;    // empty: stdout (figure 1: directory, required)
  std::string cache;  // zero cache file; empty: $HYPERDOT_CACHE_DIR/zeros.txt if set
  double tol = 0;     // <= 0: library defaults
  bool quick = false;
  int jobs = 0;  // 0: hardware concurrency
  double threshold_fault = 0;  // check: offset added to the claimed thresholds
};

// "A..B", "a,b,c" or a single integer.
std::vector<int> parse_dims(const std::string& s);

// Linear or logarithmic grid with `points` nodes including both ends.
std::vector<double> alpha_grid(double lo, double hi, int points, bool log_spacing);

// Throws ConfigError on invalid combinations.
void validate(const RunConfig& cfg);

// Resolved zero-cache file (empty when caching is off).
std::string cache_path(const RunConfig& cfg);

int cmd_table(const RunConfig& cfg, std::ostream& out);
int cmd_figure(const RunConfig& cfg, std::ostream& out, std::ostream& log);
int cmd_check(const RunConfig& cfg, std::ostream& out, std::ostream& log);
int cmd_zeros(const RunConfig& cfg, std::ostream& log);

// Full command line entry point: parsing, cache handling and exit codes.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hyperdot::cli
