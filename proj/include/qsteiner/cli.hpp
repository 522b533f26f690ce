#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qsteiner {

/// Exit codes of the qsteiner tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitInfeasible = 1,  // disconnected terminals, or verify found a mismatch
  kExitParse = 2,       // malformed STP input or bad command line
  kExitGuard = 3,       // an exhaustive routine refused an instance that is too large
  kExitInvalid = 4,     // parameters outside their domain
};

/// Runs the command line `args` (without the program name). Output goes to `out`, diagnostics
/// and STEINER_LOG messages to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qsteiner
