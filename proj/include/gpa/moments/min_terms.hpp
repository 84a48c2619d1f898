#pragma once

#include <vector>

#include "gpa/lang/ast.hpp"
#include "gpa/moments/moment_system.hpp"

namespace gpa::moments {

/// One min occurrence of a closure system; its switch points are the zeros of
/// left - right.
struct MinTerm {
  std::size_t id = 0;  // 1-based, in order of discovery
  NodeId node = 0;
  NodeId left = 0;
  NodeId right = 0;
  int max_order = 1;  // highest moment order in either argument
};

/// Structurally distinct Min nodes whose arguments only involve moments of
/// order <= max_order. Ids follow a depth-first walk of the right-hand sides
/// in unknown order, so they are stable for a given system.
std::vector<MinTerm> collect_min_terms(const MomentSystem& sys, int max_order);

/// Highest moment order needed to evaluate an expression (0 for constants).
int required_order(const lang::MomentExpr& expr);
/// Highest order over the commands of one analysis block.
int required_order(const std::vector<lang::Command>& commands);

}  // namespace gpa::moments
