#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fapprox::cli {

enum ExitCode : int { verified = 0, refuted = 1, usage_error = 2 };

/// Runs one command line (without the program name). Reports go to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fapprox::cli
