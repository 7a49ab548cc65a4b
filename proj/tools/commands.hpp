#pragma once

#include <iosfwd>

namespace surrox::cli {

/// Parses argv, runs one subcommand and returns the process exit code:
/// 0 success, 2 usage, 3 data error, 4 numerical error. Failures write one
/// JSON line {"code": ..., "detail": ...} to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace surrox::cli
