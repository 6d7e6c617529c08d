#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace smc::cli {

// One CLI invocation; `args` excludes the program name. Data goes to `out`
// (or the --out file), diagnostics to `err`. Returns the process exit code:
// 0 success, 1 usage error, 2 infeasible/budget, 3 fit failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace smc::cli
