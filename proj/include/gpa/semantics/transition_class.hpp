#pragma once

#include <string>
#include <vector>

#include "gpa/lang/validator.hpp"
#include "gpa/semantics/rate_expr.hpp"
#include "gpa/semantics/state_index.hpp"

namespace gpa::semantics {

/// One aggregated CTMC transition: firing adds `jump` to the count vector
/// and happens at rate `rate(N)`.
struct TransitionClass {
  std::string action;
  std::vector<int> jump;
  RateExpr rate;
};

/// Total rate at which `node` offers `action` given symbolic counts: a
/// linear form for a group, the minimum of both sides for a shared action,
/// the sum otherwise. Const(0) when the action is not enabled under `node`.
RateExpr apparent_rate(const lang::GroupedModel& node, const std::string& action,
                       const StateIndex& index);

/// Every transition class of the model. Actions are visited in order of first
/// appearance along the dimensions; within an action, synchronised
/// combinations are ordered left side first.
std::vector<TransitionClass> enumerate_transition_classes(const lang::ValidatedModel& model,
                                                          const StateIndex& index);

/// True when no class rate contains a Ratio node.
bool is_split_free(const std::vector<TransitionClass>& classes);
bool is_split_free(const lang::ValidatedModel& model);

/// `k: action l=[...] rate=<expr>` lines (1-based k).
std::string dump_classes(const std::vector<TransitionClass>& classes, const StateIndex& index);

}  // namespace gpa::semantics
