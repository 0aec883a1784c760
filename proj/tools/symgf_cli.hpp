#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "symgf/grid.hpp"

namespace symgf::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitInput = 2;

struct RunConfig {
  std::string command;
  std::string builtin = "symplectic";
  std::string genfun_path;
  std::string alpha_path;
  std::string lie_path;
  std::string algebra = "so3";
  std::string map_spec = "identity";
  std::vector<std::string> f_spec{"identity"};
  std::vector<std::string> g_spec{"identity"};
  int d = 2;
  double eps = 0.1;
  int order = 1;
  int trunc = 4;
  GridSpec grid;
  std::map<std::string, double> tol;
  std::string out;
  std::string format = "json";
  int jobs = 1;
  std::vector<double> p_point;
  std::vector<double> x_point;
  double fd_step = 0.0;
};

// Parses argv and runs one subcommand; output goes to `out` (or --out),
// diagnostics to `err`. Returns an exit code: 0 all checks pass, 1 a
// verification failure, 2 bad input.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace symgf::cli
