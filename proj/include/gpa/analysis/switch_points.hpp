#pragma once

#include <string>
#include <vector>

#include "gpa/moments/min_terms.hpp"
#include "gpa/moments/moment_system.hpp"
#include "gpa/numerics/dataset.hpp"

namespace gpa::analysis {

struct SwitchSeries {
  moments::MinTerm term;
  std::string label;  // min#<id>(<left>|<right>)
  std::vector<double> difference;  // left - right per grid point
  std::vector<double> crossings;
};

struct SwitchPointReport {
  std::vector<SwitchSeries> series;
};

/// Zeros of a sampled series: sign changes between neighbours are located by
/// linear interpolation, and a run of exact zeros is reported at its start.
std::vector<double> find_crossings(const std::vector<double>& times,
                                   const std::vector<double>& values);

/// Difference series of every min term of `closure` with moments of order
/// <= order, evaluated on the moment columns of `ds`.
SwitchPointReport switch_points(const moments::MomentSystem& closure, int order,
                                const numerics::DataSet& ds);

}  // namespace gpa::analysis
