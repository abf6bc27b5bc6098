#pragma once

// nilrigid command line. run_cli is the whole program minus process setup,
// so tests can drive it with argument vectors and captured streams.

#include <iosfwd>
#include <string>
#include <vector>

namespace nilrigid::cli {

enum ExitCode { kPass = 0, kMismatch = 1, kUsage = 2, kResource = 3 };

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nilrigid::cli
