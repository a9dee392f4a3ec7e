#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace crflat {

// Exit codes of the command-line tool.
enum ExitCode { kExitOk = 0, kExitUsage = 1, kExitParse = 2, kExitMath = 3, kExitInconsistency = 4 };

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace crflat
