#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace oneone::cli {

// args excludes the program name. Returns the process exit code:
// 0 success, 1 domain error, 2 usage error, 3 internal consistency failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace oneone::cli
