#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tsaug::cli {

/// Exit statuses of the command-line tool.
enum ExitCode : int {
  kOk = 0,
  kParseError = 2,       ///< unreadable input, malformed file, bad usage
  kMethodError = 3,      ///< unknown method or parameter, method constraint violated
  kMissingDeltaAcc = 4,  ///< correlate: (dataset, method) rows missing from the delta-acc table
};

/// Environment variable that overrides the default output directory.
inline constexpr const char* kOutputDirEnv = "TSAUG_OUTPUT_DIR";

/// Runs the tool with args (args[0] is the program name). Never throws.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tsaug::cli
