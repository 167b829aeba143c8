#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace smf::cli {

/// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitNumerical = 1;  ///< NoBracket, ConvergenceFailure, failed validation, ...
inline constexpr int kExitUsage = 2;      ///< bad flags or a domain error

/// Runs one command. args excludes the program name. Results go to `out`
/// (or to --output), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Locale-independent shortest form with 17 significant digits at most.
std::string format_number(double x);

}  // namespace smf::cli
