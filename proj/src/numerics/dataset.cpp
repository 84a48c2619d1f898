#include "gpa/numerics/dataset.hpp"

#include <cmath>

#include "gpa/error.hpp"

namespace gpa::numerics {

std::vector<double> make_grid(double stop_time, double step_size) {
  auto last = static_cast<std::size_t>(std::floor(stop_time / step_size + 1e-9));
  std::vector<double> grid(last + 1);
  for (std::size_t j = 0; j <= last; ++j) grid[j] = static_cast<double>(j) * step_size;
  return grid;
}

double DataSet::at(const moments::MomentIndex& m, std::size_t j) const {
  if (m.empty()) return 1.0;
  auto it = moments.find(m);
  if (it == moments.end()) throw Error("data set has no column for moment of order " +
                                       std::to_string(m.order()));
  return it->second[j];
}

}  // namespace gpa::numerics
