#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kcoal {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitParse = 2;
inline constexpr int kExitInfeasible = 3;
inline constexpr int kExitGuard = 4;

/// Full CLI, callable in-process so tests capture stdout/stderr directly.
/// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace kcoal
