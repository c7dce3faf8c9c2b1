#pragma once

#include <ostream>

namespace repgeom::cli {

enum ExitCode : int { kOk = 0, kValidationFailure = 1, kIoError = 2, kBadArguments = 3 };

/// Entry point of the `repgeom` command line tool; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace repgeom::cli
