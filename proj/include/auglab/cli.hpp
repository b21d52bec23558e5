#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace auglab {

// Exit codes shared by every subcommand.
enum ExitCode : int {
  kExitOk = 0,
  kExitGateFailed = 1,
  kExitInputError = 2,
  kExitInfeasible = 3,
  kExitUnknown = 4,
};

// Runs the command line `args` (without the program name).  Results go to
// `out` unless --output names a file; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace auglab
