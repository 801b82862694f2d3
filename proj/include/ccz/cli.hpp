#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ccz::cli {

// Runs the ccz command line with args (excluding the program name).
// Reports and sizes go to out, diagnostics to err. Returns the exit status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ccz::cli
