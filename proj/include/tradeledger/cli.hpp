#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tradeledger::cli {

enum ExitCode : int {
  kOk = 0,
  kInputError = 1,        // bad arguments, unreadable files, scenario parse errors
  kUnexpectedRevert = 2,  // a scenario step's outcome differs from its annotation
};

// Runs the `tradeledger` command line. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tradeledger::cli
