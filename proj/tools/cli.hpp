#pragma once

#include <iosfwd>

namespace bergman::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitFail = 1,
  kExitUsage = 2,
  kExitIo = 3,
};

/// Runs the command line tool; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace bergman::cli
