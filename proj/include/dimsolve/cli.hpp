#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dimsolve {

/// Command-line entry point without the program name. Exit codes: 0 solved
/// or success, 2 unknown / not solved, 1 usage or input errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dimsolve
