#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace orbiloop::cli {

enum ExitCode { kOk = 0, kInternal = 1, kSchema = 2, kPrecondition = 3 };

/// Runs the command line (args excludes the program name) and returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace orbiloop::cli
