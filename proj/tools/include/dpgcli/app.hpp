#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace dpgcli {

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kValidationError = 2, kSolverFailure = 3 };

/// `dpgmarch <command> --config <path> [key=value ...]`; `args` excludes the
/// program name.
int run_app(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace dpgcli
