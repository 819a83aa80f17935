#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace swsig {

enum ExitCode : int {
  kExitOk = 0,
  kExitValidation = 1,
  kExitSolver = 2,
  kExitBudget = 3,
};

/// Entry point of the `swsig` tool: solve | mpc | enumerate | validate-reg.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace swsig
