#pragma once

/// @file expr.hpp
/// @brief Arithmetic expressions in config files, e.g. "16*ln(n)" or
/// "lambda/15".
///
/// Grammar: numbers, variables, + - * / ^ (right-associative), unary minus,
/// parentheses and the functions ln, log2, sqrt, exp. The token sqrt_n is
/// shorthand for sqrt(n).

#include <map>
#include <string>
#include <string_view>

namespace saea::harness {

using Variables = std::map<std::string, double, std::less<>>;

/// ConfigError on syntax errors and unknown names.
double evaluate_expression(std::string_view expr, const Variables& vars);

}  // namespace saea::harness
