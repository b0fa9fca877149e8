#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace prwpv::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
  kSuccess = 0,
  kValidationFailed = 1,  // validate: some exceedance above delta + 3 stderr
  kUsageOrDataError = 2,
};

/// Runs the `prwpv` command line. `args` excludes the program name.
/// Output goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace prwpv::cli
