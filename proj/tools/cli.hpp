#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace usp::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kMathFailure = 2 };

/// Runs one command line (without the program name) and returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace usp::cli
