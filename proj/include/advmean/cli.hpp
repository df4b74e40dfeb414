#pragma once

#include <iosfwd>

namespace advmean::cli {

// Process exit codes.
inline constexpr int kPass = 0;
inline constexpr int kFailed = 1;
inline constexpr int kUsage = 2;
inline constexpr int kRefused = 3;  // degenerate input, or outside the regime without override

// Entry point behind the advmean executable. Reports go to --out when given,
// otherwise to `out`; diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace advmean::cli
