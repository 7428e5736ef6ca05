#pragma once

#include <string>
#include <vector>

#include "pcs/poly.hpp"

namespace pcs {

struct ParseNotes {
  // integer literals that reduced to zero in the coefficient field
  std::vector<std::string> reduced_literals;
};

// Grammar: integer literals, X, Y, + - * ^, parentheses, unary minus.
// Implicit multiplication is rejected.  Caret exponents are nonnegative
// integer literals.  Syntax errors carry the offending position.
BivariatePolynomial parse_expression(const std::string& text, const FieldSpec& field,
                                     ParseNotes* notes = nullptr);

}  // namespace pcs
