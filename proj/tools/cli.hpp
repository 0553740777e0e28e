#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace amplex::cli {

enum ExitCode : int { kOk = 0, kNegative = 1, kUsage = 2, kResource = 3 };

/// Runs one command line (args excludes the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace amplex::cli
