#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace scoring::cli {

/// Runs one invocation. `args` excludes the program name. Data goes to `out`,
/// diagnostics to `err`. Returns the process exit status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace scoring::cli
