#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tori::cli {

// Runs the command line given as argv-style tokens (without the program
// name).  JSON results go to `out`, diagnostics to `err`.  Exit status:
// 0 success, 1 semantic failure, 2 input error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace tori::cli
