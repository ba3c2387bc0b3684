#pragma once

#include <ostream>

namespace tdl::cli {

enum ExitCode : int { kOk = 0, kUsage = 2, kResource = 3, kConsistency = 4 };

/// Parses argv and runs one subcommand, writing the report to `out`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tdl::cli
