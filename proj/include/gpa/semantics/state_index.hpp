#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "gpa/lang/validator.hpp"
#include "gpa/semantics/derivatives.hpp"

namespace gpa::semantics {

/// One counting dimension: the number of `derivative` components in `group`.
struct Dim {
  std::string group;
  std::string derivative;
};

/// Derivative graph of one group and the dimensions it occupies.
struct GroupBlock {
  std::string label;
  std::size_t first_dim = 0;
  std::vector<Derivative> derivatives;  // dim = first_dim + position

  std::size_t size() const { return derivatives.size(); }
};

/// Bijection between (group, derivative) pairs and count-vector positions.
/// Dimensions follow group declaration order, then breadth-first derivative
/// discovery order within each group.
class StateIndex {
 public:
  StateIndex(std::vector<GroupBlock> groups, std::vector<long> initial);

  std::size_t size() const { return dims_.size(); }
  const std::vector<Dim>& dims() const { return dims_; }
  const std::vector<GroupBlock>& groups() const { return groups_; }
  const std::vector<long>& initial() const { return initial_; }
  long total_population() const { return total_; }

  std::optional<std::size_t> find(const std::string& group, const std::string& derivative) const;
  const GroupBlock& group(const std::string& label) const;
  /// "Group:Derivative"
  std::string label(std::size_t dim) const;
  std::size_t group_of(std::size_t dim) const { return group_of_[dim]; }

 private:
  std::vector<GroupBlock> groups_;
  std::vector<Dim> dims_;
  std::vector<std::size_t> group_of_;
  std::vector<long> initial_;
  long total_ = 0;
};

StateIndex build_state_index(const lang::ValidatedModel& model);

}  // namespace gpa::semantics
