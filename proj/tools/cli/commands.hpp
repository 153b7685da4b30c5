#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace stress_shield::cli {

/// Process exit codes; a stable contract for scripts.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 2,
  kExitInfeasible = 3,
  kExitIo = 4,
  kExitCheckFailed = 5,
};

/// Runs the command line `args` (args[0] is the program name). Reports go
/// to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses the key=value lines of a text report.
std::map<std::string, std::string> parse_report(std::string_view text);

/// printf("%.17g"); parsing the result with strtod recovers the value exactly.
std::string format_double(double v);

}  // namespace stress_shield::cli
