#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace treediam::cli {

// Exit codes shared by every command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitBudget = 3;

// Runs one command line (without the program name). Artifacts without
// --out and all reports go to `out`; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Removes the "wall_time" manifest field so outputs can be compared.
std::string strip_wall_time(std::string_view text);

}  // namespace treediam::cli
