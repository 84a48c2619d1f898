#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gpa/semantics/rate_expr.hpp"
#include "gpa/semantics/state_index.hpp"
#include "gpa/semantics/transition_class.hpp"

namespace gpa::semantics {

/// Fluid drift f(v) = Σ_k f^k(v)·l^k, one list of (coefficient, rate) terms
/// per dimension. Structurally identical rates are merged; nothing else is
/// rewritten.
class VectorField {
 public:
  using Terms = std::vector<std::pair<double, RateExpr>>;

  explicit VectorField(std::vector<Terms> rows) : rows_(std::move(rows)) {}

  std::size_t size() const { return rows_.size(); }
  const Terms& row(std::size_t dim) const { return rows_[dim]; }

  void evaluate(std::span<const double> v, std::span<double> out) const;
  std::vector<double> evaluate(std::span<const double> v) const;

  std::string to_string(const StateIndex& index) const;

 private:
  std::vector<Terms> rows_;
};

VectorField build_vector_field(const std::vector<TransitionClass>& classes,
                               const StateIndex& index);

}  // namespace gpa::semantics
