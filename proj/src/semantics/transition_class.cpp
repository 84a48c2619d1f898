#include "gpa/semantics/transition_class.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace gpa::semantics {

namespace {

bool cooperates_on(const lang::GroupCooperation& c, const std::string& action) {
  return std::find(c.actions.begin(), c.actions.end(), action) != c.actions.end();
}

struct Partial {
  std::vector<int> jump;
  RateExpr rate;
};

// Fraction of a side's apparent rate carried by one of its classes. Returns a
// constant whenever the class rate is a fixed multiple of the apparent rate.
RateExpr share(const RateExpr& rate, const RateExpr& apparent) {
  if (rate == apparent) return RateExpr::constant(1.0);
  if (rate.kind() == RateExpr::Kind::kLinear && apparent.kind() == RateExpr::Kind::kLinear &&
      rate.terms().size() == apparent.terms().size()) {
    const auto& a = rate.terms();
    const auto& b = apparent.terms();
    double k = a[0].second / b[0].second;
    bool proportional = true;
    for (std::size_t i = 0; i < a.size() && proportional; ++i) {
      proportional = a[i].first == b[i].first &&
                     std::fabs(a[i].second - k * b[i].second) <= 1e-12 * std::fabs(a[i].second);
    }
    if (proportional) return RateExpr::constant(k);
  }
  if (rate.kind() == RateExpr::Kind::kScale && rate.left() == apparent) {
    return RateExpr::constant(rate.value());
  }
  return RateExpr::ratio(rate, apparent);
}

std::vector<Partial> classes_for(const lang::GroupedModel& node, const std::string& action,
                                 const StateIndex& index) {
  if (const auto* c = std::get_if<lang::GroupCooperation>(&node.node)) {
    auto left = classes_for(*c->left, action, index);
    auto right = classes_for(*c->right, action, index);
    if (!cooperates_on(*c, action)) {
      left.insert(left.end(), right.begin(), right.end());
      return left;
    }
    std::vector<Partial> out;
    if (left.empty() || right.empty()) return out;
    RateExpr app_left = apparent_rate(*c->left, action, index);
    RateExpr app_right = apparent_rate(*c->right, action, index);
    RateExpr bounded = RateExpr::min(app_left, app_right);
    for (const auto& l : left) {
      for (const auto& r : right) {
        Partial p;
        p.jump.resize(index.size());
        for (std::size_t d = 0; d < index.size(); ++d) p.jump[d] = l.jump[d] + r.jump[d];
        RateExpr prefactor =
            RateExpr::mul(share(l.rate, app_left), share(r.rate, app_right));
        p.rate = RateExpr::mul(prefactor, bounded);
        out.push_back(std::move(p));
      }
    }
    return out;
  }

  const auto& g = std::get<lang::Group>(node.node);
  const GroupBlock& block = index.group(g.label);
  std::vector<Partial> out;
  for (std::size_t i = 0; i < block.size(); ++i) {
    for (const auto& t : block.derivatives[i].transitions) {
      if (t.action != action) continue;
      Partial p;
      p.jump.assign(index.size(), 0);
      p.jump[block.first_dim + i] -= 1;
      p.jump[block.first_dim + t.target] += 1;
      p.rate = RateExpr::variable(block.first_dim + i, t.rate);
      out.push_back(std::move(p));
    }
  }
  return out;
}

}  // namespace

RateExpr apparent_rate(const lang::GroupedModel& node, const std::string& action,
                       const StateIndex& index) {
  if (const auto* c = std::get_if<lang::GroupCooperation>(&node.node)) {
    RateExpr l = apparent_rate(*c->left, action, index);
    RateExpr r = apparent_rate(*c->right, action, index);
    return cooperates_on(*c, action) ? RateExpr::min(l, r) : RateExpr::sum(l, r);
  }
  const auto& g = std::get<lang::Group>(node.node);
  const GroupBlock& block = index.group(g.label);
  RateExpr::LinearTerms terms;
  for (std::size_t i = 0; i < block.size(); ++i) {
    for (const auto& t : block.derivatives[i].transitions) {
      if (t.action == action) terms.emplace_back(block.first_dim + i, t.rate);
    }
  }
  return RateExpr::linear(std::move(terms));
}

std::vector<TransitionClass> enumerate_transition_classes(const lang::ValidatedModel& model,
                                                          const StateIndex& index) {
  std::vector<std::string> actions;
  std::set<std::string> seen;
  for (const auto& g : index.groups()) {
    for (const auto& d : g.derivatives) {
      for (const auto& t : d.transitions) {
        if (seen.insert(t.action).second) actions.push_back(t.action);
      }
    }
  }

  std::vector<TransitionClass> out;
  for (const auto& action : actions) {
    for (auto& p : classes_for(model.system(), action, index)) {
      if (p.rate.is_zero()) continue;
      out.push_back(TransitionClass{action, std::move(p.jump), std::move(p.rate)});
    }
  }
  return out;
}

bool is_split_free(const std::vector<TransitionClass>& classes) {
  return std::none_of(classes.begin(), classes.end(),
                      [](const TransitionClass& c) { return c.rate.contains_ratio(); });
}

bool is_split_free(const lang::ValidatedModel& model) {
  StateIndex index = build_state_index(model);
  return is_split_free(enumerate_transition_classes(model, index));
}

std::string dump_classes(const std::vector<TransitionClass>& classes, const StateIndex& index) {
  std::string out;
  auto name = [&](std::size_t d) { return index.label(d); };
  for (std::size_t k = 0; k < classes.size(); ++k) {
    out += std::to_string(k + 1) + ": " + classes[k].action + " l=[";
    for (std::size_t d = 0; d < classes[k].jump.size(); ++d) {
      if (d > 0) out += ",";
      out += std::to_string(classes[k].jump[d]);
    }
    out += "] rate=" + classes[k].rate.to_string(name) + "\n";
  }
  return out;
}

}  // namespace gpa::semantics
