#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace twoproj::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNegative = 1;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitUsage = 64;

/// Runs one command. `args` excludes the program name. The JSON report goes
/// to `out`, diagnostics to `err`.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace twoproj::cli
