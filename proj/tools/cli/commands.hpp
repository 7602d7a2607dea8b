#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sabl::cli {

/// Runs the command line `args` (args[0] is the program name) and returns
/// the exit code: 0 success, 1 internal error, 2 usage or input error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sabl::cli
