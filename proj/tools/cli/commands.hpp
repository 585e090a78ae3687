#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace probo::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,    // bad flags, unreadable or invalid config
  kExitRuntime = 2,  // a run or an output write failed
};

// Entry point behind the `probo` executable. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace probo::cli
