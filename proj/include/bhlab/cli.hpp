#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bhlab::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
  kOk = 0,
  kMismatch = 1,    // verdict differs from the catalogued expectation
  kUsage = 2,       // bad flags or unknown family id
  kFailure = 3,     // drift exceeded, unreadable input, non-unit-speed samples
};

/// Runs one command line (args excludes the program name). Reports go to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bhlab::cli
