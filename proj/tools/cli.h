#pragma once

#include <ostream>

namespace partload::cli {

// Exit codes of the partload command.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 2,
  kExitTooLarge = 3,
  kExitModeUnsupported = 4,
  kExitIo = 5,
};

// Runs the command line `argv` (argv[0] is the program name), writing
// normal output to `out` and diagnostics to `err`. Returns the exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace partload::cli
