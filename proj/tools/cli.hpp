#pragma once

#include <iosfwd>

namespace zeta2::cli {

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kUsage = 1;
inline constexpr int kDomain = 2;
inline constexpr int kNumerical = 3;

/// Parses argv and runs one command. Results go to `out` (or to --out), diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace zeta2::cli
