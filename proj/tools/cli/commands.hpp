// `dcopt` command-line front end. run() is the whole program minus process
// setup, so tests can drive it in-process.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dcopt::cli {

enum ExitCode : int {
  kOk = 0,
  kViolation = 1,
  kBadInput = 2,
  kInvariantViolation = 3,
};

/// args excludes the program name. Machine-readable output goes to out (or
/// the --out file), diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dcopt::cli
