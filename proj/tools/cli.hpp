#pragma once

#include <string>
#include <vector>

namespace walkzeta::cli {

/// Parsed command-line options. One command produces one artifact.
struct RunConfig {
  std::string command;  // coin | evolve | zeta | zeta-limit | cr | verify
  std::string model = "hadamard";
  std::string shift = "m";
  double xi = 0.78539816339744831;  // pi/4
  int d = 1;
  int n = 8;
  int steps = 10;
  int p = 0;  // 0 = model default
  int rmax = 12;
  int grid_m = 0;  // 0 = auto
  std::vector<std::string> u_strings;
  std::vector<std::string> methods;
  std::string suite = "all";
  double tol = 1e-9;
  std::string spin;
  std::string dump = "measures";  // evolve payload: measures | state
  std::string format = "json";    // json | csv
  std::string out;                // output path; empty = stdout
  int samples = 100;
  unsigned seed = 20240901;
};

/// Exit status: 0 success, 1 verification failure, 2 config error.
int run(const RunConfig& cfg);
int run_cli(int argc, const char* const* argv);

}  // namespace walkzeta::cli
