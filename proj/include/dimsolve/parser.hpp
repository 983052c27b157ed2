#pragma once

#include "dimsolve/chc.hpp"

#include <stdexcept>
#include <string>
#include <string_view>

namespace dimsolve {

struct ParseError : std::runtime_error {
    ParseError(const std::string& msg, int line, int column);
    int line;
    int column;
};

/// Reads a program in CLP syntax (`%` comments). Also accepts the printed
/// indexed forms `p(d)(Args)` and `p[d](Args)`. The result is normalized:
/// literal and repeated atom arguments become fresh variables plus
/// equalities.
Program parse_program(std::string_view text);

Program parse_program_file(const std::string& path);

}  // namespace dimsolve
