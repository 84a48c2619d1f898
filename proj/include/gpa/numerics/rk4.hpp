#pragma once

#include <functional>
#include <span>
#include <vector>

#include "gpa/moments/moment_system.hpp"
#include "gpa/numerics/dataset.hpp"

namespace gpa::numerics {

/// State of an ODE system sampled on the output grid, one row per grid point.
struct Trajectory {
  std::vector<double> times;
  std::vector<std::vector<double>> states;
};

using Rhs = std::function<void(std::span<const double> x, std::span<double> dx)>;

/// Classic fourth-order Runge-Kutta with internal step step_size / density.
/// Throws NumericalError at the first non-finite state.
Trajectory integrate_rk4(const Rhs& rhs, std::vector<double> init, double stop_time,
                         double step_size, long density);

/// Integrates a moment system from `init` and exposes every raw moment the
/// system carries as a DataSet column.
DataSet integrate_rk4(const moments::MomentSystem& sys, const std::vector<double>& init,
                      double stop_time, double step_size, long density);

}  // namespace gpa::numerics
