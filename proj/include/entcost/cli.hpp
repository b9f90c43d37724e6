#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace entcost::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kPrecondition = 2,
    kInvariantViolation = 3,
    kNonConvergence = 4,
};

// Runs one command line (without the program name). Tables go to `out` unless
// --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace entcost::cli
