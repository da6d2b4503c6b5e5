#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ccon::cli {

enum ExitCode : int {
  kOk = 0,
  kInternal = 1,
  kUnknownSubcommand = 2,
  kConflictingFlags = 3,
  kUsage = 4,
  kIo = 5,
  kParse = 6,
  kInvalidParameter = 7,
  kEnsembleAborted = 8,
};

/// Runs one invocation; `args` excludes the program name. Results go to
/// `out`, error objects (one JSON line) to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ccon::cli
