#pragma once

#include <iosfwd>

namespace citemetrics {

enum ExitCode : int { kExitOk = 0, kExitIo = 1, kExitValidation = 2, kExitNonConvergence = 3 };

// Entry point of the `citemetrics` tool; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace citemetrics
