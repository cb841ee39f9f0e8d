#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "lnd/ratfn.hpp"

namespace lnd {

struct ParseError : std::runtime_error {
    ParseError(std::string msg, int line, int col)
        : std::runtime_error(msg + " at line " + std::to_string(line) + ", column " +
                             std::to_string(col)),
          line(line),
          col(col) {}
    int line;
    int col;
};

// Parses the expression grammar:
//   expr   := ['-'] term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := base ('^' nonneg-int)?
//   base   := integer | identifier | '(' expr ')'
// '*' is required between factors. Rational literals arise as integer
// quotients. Throws ParseError with position info; unknown identifiers and
// division by the zero polynomial are also ParseErrors.
RatFn parse_expr(std::string_view text, const VarSetPtr& vs);

// Same, but requires a polynomial value (denominator 1).
Poly parse_poly(std::string_view text, const VarSetPtr& vs);

}  // namespace lnd
