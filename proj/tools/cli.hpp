#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace petrisim::cli {

/// Runs the command line given as `args` (without the program name).
/// Data rows go to `out` when the output path is "-"; diagnostics and the
/// run summary go to `err`. Returns the process exit status: 0 only when
/// the requested output was completely written.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace petrisim::cli
