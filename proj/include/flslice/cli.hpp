#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace flslice {

enum ExitCode { kExitOk = 0, kExitUsage = 1, kExitInput = 2, kExitCheck = 3, kExitFuel = 4 };

// Entry point of the flslice command; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace flslice
