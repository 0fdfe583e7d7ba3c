#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "nullitylab/error.hpp"

namespace nullitylab {

/// Exit codes of the command line tool.
enum ExitCode : int { kExitOk = 0, kExitFailed = 1, kExitUsage = 2, kExitNumerical = 3 };

int exit_code_for(ErrorCode code);

/// Entry point of the `nullitylab` tool. Reports go to `out`, diagnostics to
/// `err`. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace nullitylab
