#include "gpa/analysis/switch_points.hpp"

#include <cmath>

#include "gpa/error.hpp"

namespace gpa::analysis {

std::vector<double> find_crossings(const std::vector<double>& times,
                                   const std::vector<double>& values) {
  std::vector<double> out;
  for (std::size_t j = 0; j < values.size(); ++j) {
    if (values[j] == 0.0) {
      if (j == 0 || values[j - 1] != 0.0) out.push_back(times[j]);
      continue;
    }
    if (j == 0 || values[j - 1] == 0.0) continue;
    if ((values[j - 1] < 0.0) != (values[j] < 0.0)) {
      double frac = values[j - 1] / (values[j - 1] - values[j]);
      out.push_back(times[j - 1] + frac * (times[j] - times[j - 1]));
    }
  }
  return out;
}

SwitchPointReport switch_points(const moments::MomentSystem& closure, int order,
                                const numerics::DataSet& ds) {
  const moments::ExprPool& pool = closure.pool();
  auto terms = moments::collect_min_terms(closure, order);
  auto name = [&](std::size_t k) { return closure.unknowns()[k].label; };

  std::vector<moments::NodeId> roots;
  for (const auto& t : terms) {
    roots.push_back(t.left);
    roots.push_back(t.right);
  }
  std::vector<moments::NodeId> program = pool.reachable(roots);

  // Only unknowns the min arguments read need to be present in ds.
  std::vector<std::size_t> used;
  for (moments::NodeId id : program) {
    if (pool.node(id).op == moments::Op::kVar) used.push_back(pool.node(id).first);
  }
  for (std::size_t k : used) {
    const auto& m = closure.unknowns()[k].moment;
    if (!ds.has(m)) throw Error("no data for moment " + closure.unknowns()[k].label);
  }

  SwitchPointReport report;
  for (const auto& t : terms) {
    SwitchSeries s;
    s.term = t;
    s.label = "min#" + std::to_string(t.id) + "(" + pool.to_string(t.left, name) + "|" +
              pool.to_string(t.right, name) + ")";
    s.difference.resize(ds.size());
    report.series.push_back(std::move(s));
  }

  std::vector<double> x(closure.size(), 0.0);
  std::vector<double> values(pool.size(), 0.0);
  for (std::size_t j = 0; j < ds.size(); ++j) {
    for (std::size_t k : used) x[k] = ds.at(closure.unknowns()[k].moment, j);
    for (moments::NodeId id : program) values[id] = pool.evaluate_node(id, x, values);
    for (auto& s : report.series) s.difference[j] = values[s.term.left] - values[s.term.right];
  }
  for (auto& s : report.series) s.crossings = find_crossings(ds.times, s.difference);
  return report;
}

}  // namespace gpa::analysis
