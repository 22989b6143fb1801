#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace fanoreal::cli {

enum ExitCode { kOk = 0, kUsage = 1, kInvalidInput = 2, kInconclusive = 3 };

/// Runs the command line `fanoreal args...` (program name excluded).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fanoreal::cli
