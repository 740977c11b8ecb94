#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace chshsim::cli {

inline constexpr int kExitSuccess = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitLimit = 2;

/// Runs the command line (args excludes the program name). Data goes to out,
/// diagnostics to err. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace chshsim::cli
