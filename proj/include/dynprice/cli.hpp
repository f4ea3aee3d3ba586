#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dynprice::cli {

/// Exit codes of the command-line front end.
enum ExitCode : int {
    kOk = 0,
    kParse = 2,
    kAliasing = 3,
    kImbalance = 4,
    kAuditFailure = 5,
};

/// Runs `decompose`, `settle` or `plot-data`. args[0] is the program name.
/// Diagnostics go to `err`; data goes to files only.
int run(const std::vector<std::string>& args, std::ostream& err);

}  // namespace dynprice::cli
