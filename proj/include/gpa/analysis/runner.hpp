#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "gpa/analysis/evaluate.hpp"
#include "gpa/lang/validator.hpp"
#include "gpa/moments/moment_system.hpp"
#include "gpa/numerics/dataset.hpp"
#include "gpa/semantics/state_index.hpp"
#include "gpa/semantics/transition_class.hpp"

namespace gpa::analysis {

struct RunOptions {
  moments::Mode variance_method = moments::Mode::kClosure;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  /// Allows plotSwitchpoints in simulation and comparison blocks.
  bool sim_switchpoints = false;
  /// When set, every generated ODE system is printed here.
  std::ostream* dump_odes = nullptr;
};

/// Everything derived from the model once, shared by all analyses.
class ModelContext {
 public:
  explicit ModelContext(const lang::ValidatedModel& model);

  const lang::ValidatedModel& model() const { return model_; }
  const semantics::StateIndex& index() const { return index_; }
  const std::vector<semantics::TransitionClass>& classes() const { return classes_; }
  const Parameters& parameters() const { return parameters_; }

 private:
  const lang::ValidatedModel& model_;
  semantics::StateIndex index_;
  std::vector<semantics::TransitionClass> classes_;
  Parameters parameters_;
};

/// Result of one command: a table of series on a common grid.
struct CommandOutput {
  std::string name;  // output stem: "<analysis>_<command>" or "<analysis>.odes_<command>"
  const lang::Command* command = nullptr;
  std::vector<double> times;
  std::vector<EvaluatedSeries> columns;
  /// Switch-point commands only: crossing times per column.
  std::optional<std::vector<std::vector<double>>> crossings;
};

/// ODE moments up to `order` under the selected method.
numerics::DataSet solve_odes(const ModelContext& ctx, const lang::OdesParams& params, int order,
                             const RunOptions& options);

numerics::DataSet simulate(const ModelContext& ctx, const lang::SimulationParams& params,
                           const std::vector<moments::MomentIndex>& required,
                           const RunOptions& options);

std::vector<CommandOutput> run_odes_analysis(const ModelContext& ctx,
                                             const lang::OdesAnalysis& block,
                                             const RunOptions& options, const std::string& stem);
std::vector<CommandOutput> run_simulation_analysis(const ModelContext& ctx,
                                                   const lang::SimulationAnalysis& block,
                                                   const RunOptions& options,
                                                   const std::string& stem);
std::vector<CommandOutput> run_comparison(const ModelContext& ctx,
                                          const lang::ComparisonAnalysis& block,
                                          const RunOptions& options, const std::string& stem);

/// Runs analysis number `number` (1-based) of the model.
std::vector<CommandOutput> run_analysis(const ModelContext& ctx, const lang::AnalysisBlock& block,
                                        const RunOptions& options, std::size_t number);

}  // namespace gpa::analysis
