#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "gpa/moments/expr_pool.hpp"
#include "gpa/moments/moment_index.hpp"
#include "gpa/numerics/dataset.hpp"
#include "gpa/semantics/state_index.hpp"
#include "gpa/semantics/transition_class.hpp"
#include "gpa/ssa/rng.hpp"

namespace gpa::ssa {

/// Transition classes compiled for fast propensity evaluation on integer
/// states.
class CompiledClasses {
 public:
  explicit CompiledClasses(const std::vector<semantics::TransitionClass>& classes);

  std::size_t size() const { return jumps_.size(); }
  const std::vector<int>& jump(std::size_t k) const { return jumps_[k]; }

  /// Propensity of every class at `state`. Throws gpa::Error on a negative
  /// propensity.
  void propensities(std::span<const double> state, std::span<double> out,
                    std::vector<double>& scratch) const;

 private:
  moments::ExprPool pool_;
  std::vector<moments::NodeId> roots_;
  std::vector<moments::NodeId> program_;
  std::vector<std::vector<int>> jumps_;
};

/// Callback receiving the state at grid point j.
using GridVisitor = std::function<void(std::size_t j, std::span<const long> state)>;

/// One Gillespie direct-method path. The value reported at grid time t_j is
/// the state after every jump at time <= t_j. An absorbing state holds.
void simulate_replication(const CompiledClasses& classes, std::vector<long> init,
                          std::span<const double> grid, Stream& rng, const GridVisitor& visit);

/// Convenience form returning the sampled path, one state per grid point.
std::vector<std::vector<long>> simulate_replication(
    const std::vector<semantics::TransitionClass>& classes, std::vector<long> init,
    std::span<const double> grid, Stream& rng);

struct SimulationSettings {
  double stop_time = 1.0;
  double step_size = 0.1;
  long replications = 1;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

/// Replication-averaged raw moments on the output grid. Sums are exact
/// integers, so the result does not depend on the thread count.
numerics::DataSet run_simulation(const std::vector<semantics::TransitionClass>& classes,
                                 const semantics::StateIndex& index,
                                 const SimulationSettings& settings,
                                 const std::vector<moments::MomentIndex>& required);

}  // namespace gpa::ssa
