#pragma once

#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace recur::cli {

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kUsage = 2 };

/// Runs one command line (args excludes the program name).  Output goes to
/// `out`, diagnostics and usage text to `err`.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

} // namespace recur::cli
