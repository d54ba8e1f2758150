#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace copent::cli {

enum ExitCode : int { kOk = 0, kUsage = 2, kData = 3 };

// Environment variable naming a directory searched for relative --input paths
// that do not exist in the working directory.
inline constexpr const char* kFixtureDirEnv = "COPENT_FIXTURE_DIR";

// Runs one invocation. args excludes the program name. The report goes to
// `out` (or the --output file); diagnostics go to `err` as a single line
// prefixed with "copent: error[usage]:" or "copent: error[data]:".
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace copent::cli
