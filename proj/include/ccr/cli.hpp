#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ccr::cli {

/// Runs one command line (args excludes the program name). Exit codes: 0
/// success or property true, 1 property false (a witness is printed), 2
/// input error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ccr::cli
