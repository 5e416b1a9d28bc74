#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace bpslab {

// Exit codes are a stable scripting contract.
enum ExitCode : int {
  kExitOk = 0,
  kExitVerdictFailed = 1,  // e.g. `check` on a spec without a vanishing Euler factor
  kExitValidation = 2,
  kExitResource = 3,
  kExitNumeric = 4,
  kExitIo = 5,
};

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bpslab
