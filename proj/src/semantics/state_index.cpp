#include "gpa/semantics/state_index.hpp"

#include <numeric>
#include <stdexcept>

namespace gpa::semantics {

StateIndex::StateIndex(std::vector<GroupBlock> groups, std::vector<long> initial)
    : groups_(std::move(groups)), initial_(std::move(initial)) {
  for (std::size_t g = 0; g < groups_.size(); ++g) {
    groups_[g].first_dim = dims_.size();
    for (const auto& d : groups_[g].derivatives) {
      dims_.push_back(Dim{groups_[g].label, d.name});
      group_of_.push_back(g);
    }
  }
  if (initial_.size() != dims_.size()) {
    throw std::invalid_argument("initial state does not match the number of dimensions");
  }
  total_ = std::accumulate(initial_.begin(), initial_.end(), 0L);
}

std::optional<std::size_t> StateIndex::find(const std::string& group,
                                            const std::string& derivative) const {
  for (const auto& g : groups_) {
    if (g.label != group) continue;
    for (std::size_t i = 0; i < g.derivatives.size(); ++i) {
      if (g.derivatives[i].name == derivative) return g.first_dim + i;
    }
  }
  return std::nullopt;
}

const GroupBlock& StateIndex::group(const std::string& label) const {
  for (const auto& g : groups_) {
    if (g.label == label) return g;
  }
  throw std::out_of_range("unknown group " + label);
}

std::string StateIndex::label(std::size_t dim) const {
  return dims_[dim].group + ":" + dims_[dim].derivative;
}

namespace {

void collect_groups(const lang::ValidatedModel& model, const lang::GroupedModel& node,
                    std::vector<GroupBlock>& groups, std::vector<long>& initial) {
  if (const auto* c = std::get_if<lang::GroupCooperation>(&node.node)) {
    collect_groups(model, *c->left, groups, initial);
    collect_groups(model, *c->right, groups, initial);
    return;
  }
  const auto& g = std::get<lang::Group>(node.node);
  std::vector<std::string> starts;
  for (const auto& m : g.members) starts.push_back(m.component);
  GroupBlock block;
  block.label = g.label;
  block.derivatives = explore_derivatives(model.table(), starts);
  std::vector<long> counts(block.derivatives.size(), 0);
  for (const auto& m : g.members) {
    for (std::size_t i = 0; i < block.derivatives.size(); ++i) {
      if (block.derivatives[i].name == m.component) counts[i] += model.multiplicity(m);
    }
  }
  initial.insert(initial.end(), counts.begin(), counts.end());
  groups.push_back(std::move(block));
}

}  // namespace

StateIndex build_state_index(const lang::ValidatedModel& model) {
  std::vector<GroupBlock> groups;
  std::vector<long> initial;
  collect_groups(model, model.system(), groups, initial);
  return StateIndex(std::move(groups), std::move(initial));
}

}  // namespace gpa::semantics
