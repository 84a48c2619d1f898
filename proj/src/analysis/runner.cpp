#include "gpa/analysis/runner.hpp"

#include <algorithm>

#include "gpa/analysis/switch_points.hpp"
#include "gpa/error.hpp"
#include "gpa/moments/min_terms.hpp"
#include "gpa/numerics/rk4.hpp"
#include "gpa/ssa/simulator.hpp"

namespace gpa::analysis {

using moments::MomentIndex;

ModelContext::ModelContext(const lang::ValidatedModel& model)
    : model_(model),
      index_(semantics::build_state_index(model)),
      classes_(semantics::enumerate_transition_classes(model, index_)),
      parameters_(model.table().parameters) {}

namespace {

bool has_switchpoints(const std::vector<lang::Command>& commands) {
  return std::any_of(commands.begin(), commands.end(), [](const lang::Command& c) {
    return std::holds_alternative<lang::SwitchpointsCommand>(c.kind);
  });
}

void require_sim_switchpoints(const std::vector<lang::Command>& commands,
                              const RunOptions& options) {
  if (has_switchpoints(commands) && !options.sim_switchpoints) {
    throw UnsupportedError(
        "plotSwitchpoints in simulation or comparison analyses needs --sim-switchpoints");
  }
}

// Raw moments the commands read from a data set.
std::vector<MomentIndex> moments_for(const ModelContext& ctx,
                                     const std::vector<lang::Command>& commands) {
  std::vector<MomentIndex> out;
  for (const auto& c : commands) {
    if (const auto* plot = std::get_if<lang::PlotCommand>(&c.kind)) {
      for (const auto& e : plot->expressions) {
        auto m = required_moments(e, ctx.index());
        out.insert(out.end(), m.begin(), m.end());
      }
    } else {
      auto m = moments::all_moments(ctx.index().size(),
                                    std::get<lang::SwitchpointsCommand>(c.kind).order);
      out.insert(out.end(), m.begin(), m.end());
    }
  }
  return out;
}

SwitchPointReport switch_report(const ModelContext& ctx, int order, const numerics::DataSet& ds) {
  auto closure = moments::generate_moment_odes(ctx.classes(), ctx.index(), order);
  return switch_points(closure, order, ds);
}

CommandOutput evaluate_command(const ModelContext& ctx, const lang::Command& cmd,
                               const numerics::DataSet& ds, const std::string& name) {
  CommandOutput out;
  out.name = name;
  out.command = &cmd;
  out.times = ds.times;
  if (const auto* plot = std::get_if<lang::PlotCommand>(&cmd.kind)) {
    for (const auto& e : plot->expressions) {
      out.columns.push_back(evaluate_expression(e, ds, ctx.index(), ctx.parameters()));
    }
    return out;
  }
  int order = std::get<lang::SwitchpointsCommand>(cmd.kind).order;
  SwitchPointReport report = switch_report(ctx, order, ds);
  out.crossings.emplace();
  for (auto& s : report.series) {
    out.columns.push_back({s.label, std::move(s.difference)});
    out.crossings->push_back(std::move(s.crossings));
  }
  return out;
}

std::vector<CommandOutput> evaluate_commands(const ModelContext& ctx,
                                             const std::vector<lang::Command>& commands,
                                             const numerics::DataSet& ds,
                                             const std::string& stem) {
  std::vector<CommandOutput> out;
  for (std::size_t j = 0; j < commands.size(); ++j) {
    out.push_back(evaluate_command(ctx, commands[j], ds, stem + "_" + std::to_string(j + 1)));
  }
  return out;
}

}  // namespace

numerics::DataSet solve_odes(const ModelContext& ctx, const lang::OdesParams& params, int order,
                             const RunOptions& options) {
  order = std::max(order, 1);
  std::optional<moments::MomentSystem> sys;
  if (options.variance_method == moments::Mode::kLna) {
    if (order > 2) {
      throw UnsupportedError("linear noise approximation provides moments up to order 2, not " +
                             std::to_string(order));
    }
    sys.emplace(moments::generate_lna_odes(ctx.classes(), ctx.index()));
  } else {
    sys.emplace(moments::generate_moment_odes(ctx.classes(), ctx.index(), order));
  }
  if (options.dump_odes) *options.dump_odes << sys->dump();
  return numerics::integrate_rk4(*sys, sys->initial_state(), params.stop_time, params.step_size,
                                 params.density);
}

numerics::DataSet simulate(const ModelContext& ctx, const lang::SimulationParams& params,
                           const std::vector<MomentIndex>& required, const RunOptions& options) {
  ssa::SimulationSettings s;
  s.stop_time = params.stop_time;
  s.step_size = params.step_size;
  s.replications = params.replications;
  s.seed = options.seed;
  s.threads = options.threads;
  return ssa::run_simulation(ctx.classes(), ctx.index(), s, required);
}

std::vector<CommandOutput> run_odes_analysis(const ModelContext& ctx,
                                             const lang::OdesAnalysis& block,
                                             const RunOptions& options, const std::string& stem) {
  auto ds = solve_odes(ctx, block.params, moments::required_order(block.commands), options);
  return evaluate_commands(ctx, block.commands, ds, stem);
}

std::vector<CommandOutput> run_simulation_analysis(const ModelContext& ctx,
                                                   const lang::SimulationAnalysis& block,
                                                   const RunOptions& options,
                                                   const std::string& stem) {
  require_sim_switchpoints(block.commands, options);
  auto ds = simulate(ctx, block.params, moments_for(ctx, block.commands), options);
  return evaluate_commands(ctx, block.commands, ds, stem);
}

std::vector<CommandOutput> run_comparison(const ModelContext& ctx,
                                          const lang::ComparisonAnalysis& block,
                                          const RunOptions& options, const std::string& stem) {
  require_sim_switchpoints(block.simulation.commands, options);
  require_sim_switchpoints(block.commands, options);

  int order = std::max(moments::required_order(block.odes.commands),
                       moments::required_order(block.commands));
  auto ode_ds = solve_odes(ctx, block.odes.params, order, options);

  auto wanted = moments_for(ctx, block.simulation.commands);
  auto extra = moments_for(ctx, block.commands);
  wanted.insert(wanted.end(), extra.begin(), extra.end());
  auto sim_ds = simulate(ctx, block.simulation.params, wanted, options);

  auto out = evaluate_commands(ctx, block.odes.commands, ode_ds, stem + ".odes");
  auto sim_out = evaluate_commands(ctx, block.simulation.commands, sim_ds, stem + ".simulation");
  out.insert(out.end(), std::make_move_iterator(sim_out.begin()),
             std::make_move_iterator(sim_out.end()));

  for (std::size_t j = 0; j < block.commands.size(); ++j) {
    const auto& cmd = block.commands[j];
    std::string name = stem + "_" + std::to_string(j + 1);
    CommandOutput ode = evaluate_command(ctx, cmd, ode_ds, name);
    CommandOutput sim = evaluate_command(ctx, cmd, sim_ds, name);
    for (std::size_t c = 0; c < ode.columns.size(); ++c) {
      auto& v = ode.columns[c].values;
      for (std::size_t t = 0; t < v.size(); ++t) v[t] -= sim.columns[c].values[t];
    }
    if (ode.crossings) {
      for (std::size_t c = 0; c < ode.columns.size(); ++c) {
        (*ode.crossings)[c] = find_crossings(ode.times, ode.columns[c].values);
      }
    }
    out.push_back(std::move(ode));
  }
  return out;
}

std::vector<CommandOutput> run_analysis(const ModelContext& ctx, const lang::AnalysisBlock& block,
                                        const RunOptions& options, std::size_t number) {
  std::string stem = std::to_string(number);
  if (const auto* o = std::get_if<lang::OdesAnalysis>(&block)) {
    return run_odes_analysis(ctx, *o, options, stem);
  }
  if (const auto* s = std::get_if<lang::SimulationAnalysis>(&block)) {
    return run_simulation_analysis(ctx, *s, options, stem);
  }
  return run_comparison(ctx, std::get<lang::ComparisonAnalysis>(block), options, stem);
}

}  // namespace gpa::analysis
