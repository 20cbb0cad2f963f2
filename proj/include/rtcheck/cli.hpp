#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rtcheck {

// Exit codes: 0 no inconsistency found (consistent or inconclusive),
// 1 confirmed inconsistency witness, 2 usage/parse/validation error,
// 3 resource limit exceeded.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rtcheck
