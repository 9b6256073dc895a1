#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kmlab {

/// Exit codes of the command line front end.
enum ExitCode : int { kExitOk = 0, kExitInvalid = 1, kExitParse = 2 };

/// Runs the `kmlab` command line with `args` (program name excluded).  The
/// report goes to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kmlab
