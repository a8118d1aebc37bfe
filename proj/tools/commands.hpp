#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace graphpde::cli {

/// Exit codes: 0 success, 1 non-converged solve or failed check, 2 bad input.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitInput = 2;

/// Runs one `graphpde` invocation; `args` excludes the program name.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace graphpde::cli
