#pragma once

#include "hkd/polynomial.hpp"

#include <map>
#include <stdexcept>
#include <string>

namespace hkd {

struct ExprError : std::invalid_argument {
    ExprError(const std::string& msg, std::size_t pos);
    std::size_t position;
};

// Rational arithmetic over named parameters and one polynomial variable:
// + - * / ^ (non-negative integer exponents), parentheses, integer literals.
// Division is only allowed by a nonzero constant.
Polynomial parse_expr(const std::string& text, const std::map<std::string, Rational>& params,
                      const std::string& var = "lambda");

// Same, rejecting any occurrence of the variable.
Rational parse_constant(const std::string& text, const std::map<std::string, Rational>& params);

}  // namespace hkd
