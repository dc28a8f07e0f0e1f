#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tracelab::cli {

/// Exit codes: 0 success, 1 numeric failure (including a failed trace check),
/// 2 bad arguments, unreadable input or a violated hypothesis.
inline constexpr int kExitOk = 0;
inline constexpr int kExitNumeric = 1;
inline constexpr int kExitUsage = 2;

/// args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tracelab::cli
