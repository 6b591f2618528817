#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace permld {

// Entry point behind the permld binary, separated for testing. args excludes
// the program name. Exit codes: 0 success (and all verifications passed),
// 1 at least one verification failed, 2 usage or runtime error.
int runCli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
           std::ostream& err);

} // namespace permld
