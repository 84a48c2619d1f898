#include "gpa/ssa/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "gpa/error.hpp"

namespace gpa::ssa {

CompiledClasses::CompiledClasses(const std::vector<semantics::TransitionClass>& classes) {
  std::size_t dims = classes.empty() ? 0 : classes.front().jump.size();
  std::vector<moments::NodeId> vars;
  for (std::size_t d = 0; d < dims; ++d) vars.push_back(pool_.var(d));
  for (const auto& c : classes) {
    roots_.push_back(moments::compile_rate(pool_, c.rate, vars));
    jumps_.push_back(c.jump);
  }
  program_ = pool_.reachable(roots_);
}

void CompiledClasses::propensities(std::span<const double> state, std::span<double> out,
                                   std::vector<double>& scratch) const {
  if (scratch.size() < pool_.size()) scratch.assign(pool_.size(), 0.0);
  for (moments::NodeId id : program_) scratch[id] = pool_.evaluate_node(id, state, scratch);
  for (std::size_t k = 0; k < roots_.size(); ++k) {
    double a = scratch[roots_[k]];
    if (!(a >= 0.0)) throw Error("negative propensity in transition class " + std::to_string(k + 1));
    out[k] = a;
  }
}

void simulate_replication(const CompiledClasses& classes, std::vector<long> init,
                          std::span<const double> grid, Stream& rng, const GridVisitor& visit) {
  std::vector<long>& state = init;
  std::vector<double> real(state.begin(), state.end());
  std::vector<double> props(classes.size());
  std::vector<double> scratch;
  std::size_t j = 0;
  double t = 0.0;
  while (j < grid.size()) {
    classes.propensities(real, props, scratch);
    double total = 0.0;
    for (double a : props) total += a;
    double next = std::numeric_limits<double>::infinity();
    if (total > 0.0) next = t - std::log(1.0 - rng.uniform()) / total;
    while (j < grid.size() && grid[j] < next) visit(j++, state);
    if (j == grid.size()) break;

    double target = rng.uniform() * total;
    std::size_t k = 0;
    double acc = props[0];
    while (acc <= target && k + 1 < props.size()) acc += props[++k];
    // Guard against rounding landing on a disabled class.
    while (props[k] == 0.0 && k > 0) --k;
    const auto& l = classes.jump(k);
    for (std::size_t d = 0; d < state.size(); ++d) {
      state[d] += l[d];
      real[d] = static_cast<double>(state[d]);
    }
    t = next;
  }
}

std::vector<std::vector<long>> simulate_replication(
    const std::vector<semantics::TransitionClass>& classes, std::vector<long> init,
    std::span<const double> grid, Stream& rng) {
  CompiledClasses compiled(classes);
  std::vector<std::vector<long>> path(grid.size());
  simulate_replication(compiled, std::move(init), grid, rng,
                       [&](std::size_t j, std::span<const long> s) {
                         path[j].assign(s.begin(), s.end());
                       });
  return path;
}

namespace {

using Int = __int128;

Int checked_mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error("moment accumulator overflow");
  return r;
}

Int checked_add(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r)) throw Error("moment accumulator overflow");
  return r;
}

// Exact per-grid-point sums of each required monomial.
struct Accumulator {
  std::size_t moments = 0;
  std::vector<Int> sums;  // [grid][moment]

  Accumulator(std::size_t grid, std::size_t m) : moments(m), sums(grid * m, 0) {}

  void merge(const Accumulator& other) {
    for (std::size_t i = 0; i < sums.size(); ++i) sums[i] = checked_add(sums[i], other.sums[i]);
  }
};

}  // namespace

numerics::DataSet run_simulation(const std::vector<semantics::TransitionClass>& classes,
                                 const semantics::StateIndex& index,
                                 const SimulationSettings& settings,
                                 const std::vector<moments::MomentIndex>& required) {
  if (settings.replications < 1) throw Error("replications must be at least 1");
  std::vector<moments::MomentIndex> wanted = required;
  std::erase_if(wanted, [](const moments::MomentIndex& m) { return m.empty(); });
  std::sort(wanted.begin(), wanted.end());
  wanted.erase(std::unique(wanted.begin(), wanted.end()), wanted.end());

  const std::vector<double> grid = numerics::make_grid(settings.stop_time, settings.step_size);
  const CompiledClasses compiled(classes);
  const std::vector<long>& init = index.initial();

  unsigned threads = std::max(1u, settings.threads);
  threads = static_cast<unsigned>(std::min<long>(threads, settings.replications));
  std::vector<Accumulator> partial(threads, Accumulator(grid.size(), wanted.size()));
  std::vector<std::exception_ptr> failures(threads);

  auto worker = [&](unsigned w) {
    try {
      Accumulator& acc = partial[w];
      auto visit = [&](std::size_t j, std::span<const long> s) {
        Int* row = acc.sums.data() + j * wanted.size();
        for (std::size_t q = 0; q < wanted.size(); ++q) {
          Int p = 1;
          for (auto d : wanted[q].dims()) p = checked_mul(p, s[d]);
          row[q] = checked_add(row[q], p);
        }
      };
      for (long r = w; r < settings.replications; r += threads) {
        Stream rng(settings.seed, static_cast<std::uint64_t>(r));
        simulate_replication(compiled, init, grid, rng, visit);
      }
    } catch (...) {
      failures[w] = std::current_exception();
    }
  };

  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(worker, w);
    for (auto& th : pool) th.join();
  }
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }
  for (unsigned w = 1; w < threads; ++w) partial[0].merge(partial[w]);

  numerics::DataSet ds;
  ds.source = numerics::DataSet::Source::kSimulation;
  ds.times = grid;
  ds.replications = settings.replications;
  const double count = static_cast<double>(settings.replications);
  for (std::size_t q = 0; q < wanted.size(); ++q) {
    std::vector<double> column(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) {
      column[j] = static_cast<double>(partial[0].sums[j * wanted.size() + q]) / count;
    }
    ds.moments.emplace(wanted[q], std::move(column));
  }
  return ds;
}

}  // namespace gpa::ssa
