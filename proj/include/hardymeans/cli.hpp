#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hardymeans {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int { exit_ok = 0, exit_computation = 1, exit_usage = 2 };

// Runs one CLI invocation. args excludes the program name. The JSON report goes
// to `out`, diagnostics to `err`.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hardymeans
