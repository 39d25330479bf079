#pragma once

#include <functional>
#include <optional>
#include <string>

#include "lbmfd/moment_poly.hpp"

namespace lbmfd {

// Environment for the small expression grammar:
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := ('+'|'-') factor | atom ('^' signed-integer)?
//   atom   := integer | identifier | '(' expr ')'
// Identifiers m1, m2, ... are moment symbols (only the first n_moments are in
// scope); any other identifier is resolved through `lookup`, or interned as a
// fresh parameter when allow_any_param is set (test convenience).
struct ExprEnv {
    int n_moments = 0;
    std::function<std::optional<Coeff>(const std::string&)> lookup;
    bool allow_any_param = false;
};

// Parses into a moment polynomial; division requires a moment-free divisor.
// Raises Error(Parse) with a 1-based column position on syntax errors.
MomentPoly parse_expression(const std::string& text, const ExprEnv& env);

// Same grammar restricted to moment-free results.
Coeff parse_coeff(const std::string& text, const ExprEnv& env);

}  // namespace lbmfd
