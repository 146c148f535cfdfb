#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ndmu {

// Command-line front end. Exit codes: 0 success, 1 a check produced a
// negative verdict (disagreement, violation, failed precondition), 2 usage,
// parse, or input errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ndmu
