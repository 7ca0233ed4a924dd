#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace bitflux::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;

/// Runs one command line (args[0] is the program name). Normal output goes to
/// `out`, diagnostics and usage to `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bitflux::cli
