#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "gpa/lang/ast.hpp"
#include "gpa/lang/validator.hpp"

namespace gpa::semantics {

struct LocalTransition {
  std::string action;
  double rate = 0.0;
  std::size_t target = 0;  // index into the derivative list
};

/// One sequential state a component can be in. `stop` and anonymous nested
/// summations are derivatives too; the latter are named by their source text
/// in parentheses.
struct Derivative {
  std::string name;
  std::vector<LocalTransition> transitions;
};

/// Closure of the starting components under their prefixes, breadth-first in
/// discovery order (starts first, in the given order). Choice contributes
/// every branch; `stop` has no transitions.
std::vector<Derivative> explore_derivatives(const lang::ComponentTable& table,
                                            const std::vector<std::string>& starts);

/// Summation that a named component behaves as, following aliases such as
/// `A = B;`. Returns nullptr for `stop`. Throws ValidationError for undefined
/// names, alias cycles and component-level cooperation.
const lang::Summation* behaviour_of(const lang::ComponentTable& table, const std::string& name);

/// Name given to the derivative reached through a nested summation.
std::string nested_derivative_name(const lang::Summation& summation);

}  // namespace gpa::semantics
