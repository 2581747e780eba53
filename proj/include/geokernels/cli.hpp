#pragma once

namespace geokernels {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitData = 2,
  kExitNumerical = 3,
};

/// Entry point of the `geokernels` command line tool. Diagnostics go to stderr.
int cli_main(int argc, const char* const* argv);

}  // namespace geokernels
