#include "gpa/moments/moment_system.hpp"

#include <algorithm>

namespace gpa::moments {

MomentSystem::MomentSystem(Mode mode, std::size_t dims, std::vector<Unknown> unknowns,
                           ExprPool pool, std::vector<NodeId> rhs, std::vector<double> initial)
    : mode_(mode),
      dims_(dims),
      unknowns_(std::move(unknowns)),
      pool_(std::move(pool)),
      rhs_(std::move(rhs)),
      initial_(std::move(initial)) {
  program_ = pool_.reachable(rhs_);
  for (std::size_t k = 0; k < unknowns_.size(); ++k) {
    if (unknowns_[k].kind == Unknown::Kind::kMoment) moment_slot_.emplace(unknowns_[k].moment, k);
  }
}

int MomentSystem::max_order() const {
  if (mode_ == Mode::kLna) return 2;
  int p = 0;
  for (const auto& u : unknowns_) p = std::max(p, u.moment.order());
  return p;
}

std::optional<std::size_t> MomentSystem::find(const MomentIndex& m) const {
  auto it = moment_slot_.find(m);
  if (it == moment_slot_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> MomentSystem::find_covariance(std::size_t i, std::size_t j) const {
  if (mode_ != Mode::kLna || i >= dims_ || j >= dims_) return std::nullopt;
  if (i > j) std::swap(i, j);
  // Upper triangle stored row by row after the means.
  return dims_ + i * dims_ - i * (i - 1) / 2 + (j - i);
}

std::optional<double> MomentSystem::raw_moment(const MomentIndex& m,
                                               std::span<const double> state) const {
  if (m.empty()) return 1.0;
  if (auto slot = find(m)) return state[*slot];
  if (mode_ == Mode::kLna && m.order() == 2) {
    std::size_t i = m.dims()[0];
    std::size_t j = m.dims()[1];
    auto c = find_covariance(i, j);
    if (!c) return std::nullopt;
    return state[*c] + state[i] * state[j];
  }
  return std::nullopt;
}

std::vector<MomentIndex> MomentSystem::raw_moments() const {
  if (mode_ == Mode::kClosure) {
    std::vector<MomentIndex> out;
    for (const auto& u : unknowns_) out.push_back(u.moment);
    return out;
  }
  return all_moments(dims_, 2);
}

void MomentSystem::evaluate(std::span<const double> x, std::span<double> out,
                            Workspace& ws) const {
  if (ws.values.size() < pool_.size()) ws.values.assign(pool_.size(), 0.0);
  for (NodeId id : program_) ws.values[id] = pool_.evaluate_node(id, x, ws.values);
  for (std::size_t k = 0; k < rhs_.size(); ++k) out[k] = ws.values[rhs_[k]];
}

std::vector<double> MomentSystem::evaluate(std::span<const double> x) const {
  Workspace ws;
  std::vector<double> out(size());
  evaluate(x, out, ws);
  return out;
}

std::string MomentSystem::dump() const {
  auto name = [&](std::size_t k) { return unknowns_[k].label; };
  std::string out;
  for (std::size_t k = 0; k < unknowns_.size(); ++k) {
    out += "d/dt " + unknowns_[k].label + " = " + pool_.to_string(rhs_[k], name) + "\n";
  }
  return out;
}

}  // namespace gpa::moments
