#pragma once

#include "apalg/torus.hpp"
#include "apalg/trigpoly.hpp"

#include <map>
#include <string>
#include <string_view>

namespace apalg {

struct ParseError : Error {
    std::size_t position;
    ParseError(const std::string& msg, std::size_t pos)
        : Error(msg + " (at position " + std::to_string(pos) + ")"), position(pos) {}
};

// Expression grammar:
//   expr   := ["-"] term (("+"|"-") term)*
//   term   := factor ("*" factor)*
//   factor := atom ["^" ["-"] int]
//   atom   := complex | "e(" freq ")" | "(" expr ")" | name
// Complex literals carry exact rational parts: 2, 1/3, 1i, (1-2/3i).
// Negative powers apply to single-term (monomial) polynomials only.
TrigPoly parse_expr(std::string_view text, TablePtr table,
                    const std::map<std::string, TrigPoly>& named = {});

/// Canonical rendering "(re+imi)*e(freq) + ..." in term order; the renderer
/// emits valid grammar, so parse(render(p)) == p exactly.
std::string render(const TrigPoly& p);

// Laurent expression over variables z1..zD with the same operator grammar;
// negative powers are allowed on the variables.
LaurentPoly parse_laurent(std::string_view text, int dim);
std::string render_laurent(const LaurentPoly& q);

}  // namespace apalg
