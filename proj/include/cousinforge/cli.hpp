// Command-line dispatch, shared by the cousinforge binary and the tests.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cousinforge {

// Exit codes: 0 success/true, 1 false, 2 precondition violation,
// 3 unsupported restriction, 4 parse error.
int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace cousinforge
