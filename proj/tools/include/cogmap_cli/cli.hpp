#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cogmap::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kPlanFailure = 3,  ///< unreachable goal or sampler budget exhausted
  kIoError = 4,      ///< missing files, parse errors, mismatched artifacts
  kBlockedEndpoint = 5,
};

/// Runs the `cogmap` command line with args excluding the program name.
/// Structured results go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cogmap::cli
