#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rsz {

// 0 ok, 1 input error, 2 precondition violated, 3 window too small.
int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace rsz
