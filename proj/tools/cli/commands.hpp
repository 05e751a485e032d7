#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ffdm::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitVerificationFailed = 1,
  kExitInputError = 2,
  kExitSolverFailure = 3,
  kExitFitFailure = 4,
};

/// Entry point of the `ffdm` tool: solve, sweep, weights, verify, fit.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Same, with argv[0] supplied internally.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Built-in parameter lists mirroring the published figure sets.
struct Preset {
  std::vector<double> alphas;
  std::vector<double> thetas;
  double gl;
  double gr;
};
/// "fig2" or "fig3"; throws ffdm::Error(InvalidArgument) otherwise.
Preset preset(const std::string& name);

}  // namespace ffdm::cli
