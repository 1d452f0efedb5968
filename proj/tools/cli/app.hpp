#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace infobounds::cli {

/// Exit statuses of the command-line tool.
enum ExitCode : int {
  kOk = 0,
  kInvalidInput = 1,
  kNotApplicable = 2,  ///< infeasible or not-applicable computation, failed checks
  kEnumerationLimit = 3,
};

/// Runs the tool on `args` (without the program name). The JSON report goes to
/// --out when given, otherwise to `out`; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace infobounds::cli
