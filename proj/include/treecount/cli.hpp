#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace treecount {

// Command-line driver. args excludes the program name. Exit codes:
// 0 success, 1 verification or numerical failure, 2 usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace treecount
