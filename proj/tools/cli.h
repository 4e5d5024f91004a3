#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hsched::cli {

enum ExitCode : int {
  kOk = 0,
  kConfigError = 1,
  kInfeasible = 2,
};

// Runs one invocation. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hsched::cli
