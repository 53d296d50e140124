#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tjurina {

/* Command-line driver, callable in-process. args excludes the program name.
 * Exit codes: 0 ok, 2 input problem, 3 mathematical precondition failure,
 * 4 a cross-check failed. */
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tjurina
