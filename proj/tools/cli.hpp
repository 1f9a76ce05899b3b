#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tbt::cli {

/// Exit codes: 0 success, 1 domain or usage error, 2 budget exceeded,
/// 3 invariant violation (including a failing `verify`).
enum ExitCode : int { kOk = 0, kDomain = 1, kBudget = 2, kInvariant = 3 };

/// Runs one command; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tbt::cli
