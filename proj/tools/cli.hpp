#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace abscope::cli {

/// Executes one subcommand. Returns 0 on success, 1 on argument errors and
/// 2 when a verification subcommand finds a violated invariant.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace abscope::cli
