#include "gpa/numerics/rk4.hpp"

#include <cmath>

#include "gpa/error.hpp"

namespace gpa::numerics {

Trajectory integrate_rk4(const Rhs& rhs, std::vector<double> init, double stop_time,
                         double step_size, long density) {
  if (density < 1) throw Error("density must be at least 1");
  Trajectory out;
  out.times = make_grid(stop_time, step_size);
  const std::size_t n = init.size();
  const double h = step_size / static_cast<double>(density);
  std::vector<double> x = std::move(init);
  std::vector<double> k1(n), k2(n), k3(n), k4(n), tmp(n);

  out.states.reserve(out.times.size());
  out.states.push_back(x);
  for (std::size_t j = 1; j < out.times.size(); ++j) {
    for (long s = 0; s < density; ++s) {
      rhs(x, k1);
      for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + 0.5 * h * k1[i];
      rhs(tmp, k2);
      for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + 0.5 * h * k2[i];
      rhs(tmp, k3);
      for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + h * k3[i];
      rhs(tmp, k4);
      for (std::size_t i = 0; i < n; ++i) {
        x[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
      }
    }
    for (double v : x) {
      if (!std::isfinite(v)) throw NumericalError(out.times[j], "non-finite ODE state");
    }
    out.states.push_back(x);
  }
  return out;
}

DataSet integrate_rk4(const moments::MomentSystem& sys, const std::vector<double>& init,
                      double stop_time, double step_size, long density) {
  moments::MomentSystem::Workspace ws;
  Rhs rhs = [&](std::span<const double> x, std::span<double> dx) { sys.evaluate(x, dx, ws); };
  Trajectory traj = integrate_rk4(rhs, init, stop_time, step_size, density);

  DataSet ds;
  ds.source = DataSet::Source::kOdes;
  ds.times = traj.times;
  for (const auto& m : sys.raw_moments()) {
    std::vector<double> column(traj.times.size());
    for (std::size_t j = 0; j < column.size(); ++j) column[j] = *sys.raw_moment(m, traj.states[j]);
    ds.moments.emplace(m, std::move(column));
  }
  return ds;
}

}  // namespace gpa::numerics
