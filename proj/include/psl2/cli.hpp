#pragma once

#include <ostream>

namespace psl2::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kMismatch = 1;
inline constexpr int kUsage = 2;
inline constexpr int kResource = 3;

// Runs the command line against the given streams. Machine-readable output
// goes to out; notices and progress go to err.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace psl2::cli
