#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace kcmedian::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitParameter = 3;

struct ClusterOptions {
  std::string input;
  std::string output;       // empty: stdout
  std::string centers;      // explicit finite center space (dataset file)
  std::string centers_out;  // chosen centers as a dataset file
  std::size_t k = 1;
  std::size_t l = 0;
  double epsilon = 0.4;
  double delta = 0.95;
  std::string mode = "weak";
  std::uint64_t seed = 0;
  std::string subset_budget = "32";  // positive integer or "exhaustive"
  std::size_t repetitions = 0;
  double cover_ratio_cap = 64.0;
  std::size_t cover_budget = 16;
  bool allow_loose_params = false;
  std::size_t threads = 1;
  std::size_t sample_size = 0;
  std::size_t strong_m = 0;
  double alpha = 0.0;
  bool timing = false;
};

struct BenchOptions {
  ClusterOptions cluster;
  std::vector<std::size_t> sizes;  // empty: n/4, n/2, n
  std::size_t seeds = 5;
};

int cmd_cluster(const ClusterOptions& options, std::ostream& out, std::ostream& err);
int cmd_bench(const BenchOptions& options, std::ostream& out, std::ostream& err);
int cmd_validate(const std::string& input, std::ostream& out, std::ostream& err);

/// Parses the command line and dispatches; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace kcmedian::cli
