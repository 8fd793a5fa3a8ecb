#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dmmm::cli {

enum ExitCode : int {
  kOk = 0,
  kParseError = 1,       // unreadable input, malformed JSON/CSV, bad command line
  kValidationError = 2,  // well-formed input violating an invariant
  kSchedulingError = 3,  // the scheduler could not produce a schedule
};

inline constexpr long long kDefaultPeakThreshold = 40;
inline constexpr long long kDefaultDormantThreshold = 10;

/// Runs one command. `args` excludes the program name, e.g.
/// {"schedule", "--scenario", "s.json", "--algorithm", "dmmm"}.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dmmm::cli
