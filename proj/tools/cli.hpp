#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lclt::cli {

enum ExitCode : int {
  kOk = 0,
  kIdentityFailure = 1,
  kUsage = 2,          ///< invalid flags or malformed plan
  kBudgetExceeded = 3,  ///< rational mode beyond the oracle budget
  kRegimeError = 4,
  kIoError = 5,
};

struct IdentityOutcome {
  std::string name;
  bool pass = true;
  std::string summary;
};

/// Prints one "name: pass|FAIL (summary)" line per outcome; kOk iff all pass.
int report_identities(const std::vector<IdentityOutcome>& outcomes, std::ostream& out);

/// Runs one command line (args excludes the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lclt::cli
