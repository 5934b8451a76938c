#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace srd::cli {

/// Exit statuses of the command-line front end.
enum ExitCode : int { kSuccess = 0, kUsageError = 1, kDataError = 2 };

/// Runs one invocation. `args` excludes the program name. Reports go to
/// `out`, diagnostics to `err`; files are only written once every
/// computation has succeeded.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace srd::cli
