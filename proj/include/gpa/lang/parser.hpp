#pragma once

#include <string>
#include <string_view>

#include "gpa/lang/ast.hpp"

namespace gpa::lang {

/// Parses a complete GPA file. Throws ParseError (with line, column and the
/// expected-token set) on malformed input and on duplicate definitions.
ModelFile parse_model(std::string_view source);

/// Parses a single moment expression such as "Var[G:A] + E[G:A^2 H:B]".
MomentExpr parse_moment_expression(std::string_view source);

}  // namespace gpa::lang
