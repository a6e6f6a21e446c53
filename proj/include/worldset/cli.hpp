#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ws {

// Runs one command line (without the program name). Returns the exit code;
// reports go to out, diagnostics to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ws
