#pragma once

#include <map>
#include <string>
#include <vector>

#include "gpa/lang/ast.hpp"
#include "gpa/moments/moment_index.hpp"
#include "gpa/numerics/dataset.hpp"
#include "gpa/semantics/state_index.hpp"

namespace gpa::analysis {

struct EvaluatedSeries {
  std::string label;
  std::vector<double> values;
};

/// Parameter values visible to moment expressions.
using Parameters = std::map<std::string, double>;

moments::MomentIndex to_moment_index(const lang::Moment& moment,
                                     const semantics::StateIndex& index);

/// Raw moments an expression reads.
std::vector<moments::MomentIndex> required_moments(const lang::MomentExpr& expr,
                                                   const semantics::StateIndex& index);

/// Pointwise value of `expr` over the grid of `ds`. Division by zero yields
/// NaN at that point; a missing moment column throws gpa::Error.
EvaluatedSeries evaluate_expression(const lang::MomentExpr& expr, const numerics::DataSet& ds,
                                    const semantics::StateIndex& index,
                                    const Parameters& parameters);

}  // namespace gpa::analysis
