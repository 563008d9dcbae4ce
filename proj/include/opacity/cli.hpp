#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace opacity::cli {

/// Runs one command line (without the program name). Exit codes: 0 opaque
/// or success, 1 violated, 2 error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace opacity::cli
