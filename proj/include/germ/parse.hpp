#pragma once

#include <string_view>

#include "germ/mpoly.hpp"

namespace germ::poly {

/// Parses an expression over the given variable names.
/// Grammar: sums and differences of products and quotients of powers, with
/// integer literals, parentheses and `^` followed by a non-negative integer
/// literal. Division is only by nonzero constants. No implicit multiplication.
/// Throws ParseError (UnknownIdentifierError for undeclared names).
MPoly parse_poly(std::string_view text, const VarNames& vars = default_var_names());

}  // namespace germ::poly
