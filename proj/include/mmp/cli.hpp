#pragma once

#include <string>
#include <vector>

namespace mmp::cli {

enum ExitCode : int {
  kOk = 0,
  kUsageError = 1,
  kUnreachable = 2,
};

/// Entry point shared by the executable and the tests. Diagnostics go to
/// stderr, reports to stdout.
int run(int argc, const char* const* argv);
int run(const std::vector<std::string>& args);

}  // namespace mmp::cli
