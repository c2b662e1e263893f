#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace symcone::cli {

enum ExitCode : int {
  ok = 0,
  usage_error = 1,
  validation_failed = 2,
  degenerate_input = 3,
  computation_failed = 4,
};

/// Runs one `symcone` invocation; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace symcone::cli
