#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "gpa/moments/moment_index.hpp"

namespace gpa::numerics {

/// Output grid t_j = j * step for j = 0..floor(stop / step), with a small
/// tolerance so that 3.0 / 0.001 yields 3001 points.
std::vector<double> make_grid(double stop_time, double step_size);

/// Raw-moment time series on a uniform grid.
struct DataSet {
  enum class Source { kOdes, kSimulation, kComparison };

  Source source = Source::kOdes;
  std::vector<double> times;
  std::map<moments::MomentIndex, std::vector<double>> moments;
  long replications = 0;  // simulation only

  std::size_t size() const { return times.size(); }
  bool has(const moments::MomentIndex& m) const { return m.empty() || moments.count(m) > 0; }
  /// Value of E[m] at grid point j; E[1] = 1. Throws gpa::Error if missing.
  double at(const moments::MomentIndex& m, std::size_t j) const;
};

}  // namespace gpa::numerics
