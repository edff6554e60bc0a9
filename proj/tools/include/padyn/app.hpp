#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace padyn {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

/// Runs one command line (without the program name). Machine output goes to
/// --out when given, otherwise to out; the human summary goes to out only when
/// --out is set. Diagnostics go to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace padyn
