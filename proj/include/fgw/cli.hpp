#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fgw {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitInvalid = 2,       // parse or validation error
  kExitInconclusive = 3,  // search pruned, step limit hit
  kExitNegative = 4,      // exhaustive negative, property violated
};

struct CliStreams {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
  /// Enables the REPL prompt and, unless FGW_COLOR=0, terminal styling.
  bool interactive = false;
};

/// Runs one command line. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, CliStreams io);

}  // namespace fgw
