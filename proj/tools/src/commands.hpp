#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ptc::cli {

// Runs one command line (without the program name). Returns the process exit status:
// 0 on success, 1 on usage errors, 2 on library errors (reported as JSON on `err`).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ptc::cli
