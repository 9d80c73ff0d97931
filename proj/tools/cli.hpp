#pragma once

#include <iosfwd>

namespace incgram::cli {

enum ExitCode : int { ok = 0, reject = 1, usage = 2, bound_exceeded = 3 };

/// Runs the `incgram` command line with the given streams. Never throws.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace incgram::cli
