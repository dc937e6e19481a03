#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace gcalc::cli {

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kFailure = 1;        ///< bad input, failed verification
inline constexpr int kResourceLimit = 2;  ///< a resource cap was hit

/// Runs the command line `args` (without the program name), writing results
/// to out and diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gcalc::cli
