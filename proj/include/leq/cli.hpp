#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace leq {

// The lambda-eq command line, separated from main() so tests can drive it.
// `args` excludes the program name.  Returns the process exit code:
// 0 success, 1 a term or declaration failed to check, 2 bad usage or
// unparseable input, 3 internal error.
int cli_main(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err);

}  // namespace leq
