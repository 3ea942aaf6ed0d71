#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace beaver::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kUsage = 2,
  kOverflow = 3,
  kUndecided = 10,
  kUnachievable = 11,
};

// `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace beaver::cli
