#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace lyapctl {

/// Process exit codes.
enum ExitCode : int {
  kDominates = 0,  // also: success for hill, hill-pick, and a consistent verify
  kNotDominated = 1,  // also: verify found a violation
  kMarginal = 2,
  kInputError = 64,
  kNumericalFailure = 70,
};

/// Runs lyapctl with args (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lyapctl
