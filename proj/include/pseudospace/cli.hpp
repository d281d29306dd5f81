#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pseudospace {

/// Exit codes shared by every subcommand.
enum ExitCode { kExitOk = 0, kExitNegative = 1, kExitUsage = 2 };

/// Runs the command line `args` (without the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pseudospace
