#include <cmath>

#include "doctest.h"
#include "gpa/numerics/dataset.hpp"
#include "gpa/semantics/state_index.hpp"
#include "gpa/semantics/transition_class.hpp"
#include "gpa/ssa/rng.hpp"
#include "gpa/ssa/simulator.hpp"
#include "oracle/ctmc_oracle.hpp"
#include "support.hpp"

using namespace gpa;
using namespace gpa::ssa;
using gpa::moments::MomentIndex;

namespace {

struct Built {
  lang::ValidatedModel vm;
  semantics::StateIndex index;
  std::vector<semantics::TransitionClass> classes;
};

Built build(const std::string& source) {
  auto vm = load(source);
  auto index = semantics::build_state_index(vm);
  auto classes = semantics::enumerate_transition_classes(vm, index);
  return {std::move(vm), std::move(index), std::move(classes)};
}

// |estimate - exact| in units of the standard error of a mean of `reps`
// samples with the given variance.
double z_score(double estimate, double exact, double variance, long reps) {
  return std::fabs(estimate - exact) / std::sqrt(variance / static_cast<double>(reps));
}

}  // namespace

TEST_CASE("seed derivation") {
  CHECK(splitmix64(0) == 0xe220a8397b1dcdafULL);
  Stream a(42, 7), b(42, 7), c(42, 8);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    double x = a.uniform();
    CHECK(x == b.uniform());
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
    differs = differs || x != c.uniform();
  }
  CHECK(differs);
}

TEST_CASE("uniform draws have the right mean and variance") {
  Stream s(1, 0);
  const int n = 200000;
  double sum = 0.0, sq = 0.0;
  for (int i = 0; i < n; ++i) {
    double x = s.uniform();
    sum += x;
    sq += x * x;
  }
  double mean = sum / n;
  CHECK(std::fabs(mean - 0.5) < 4.0 * std::sqrt(1.0 / 12.0 / n));
  CHECK(sq / n - mean * mean == doctest::Approx(1.0 / 12.0).epsilon(0.01));
}

TEST_CASE("pure death process matches its binomial law") {
  auto m = build("A = (a, 1).stop; G{A[20]}");
  SimulationSettings st{2.0, 0.5, 4000, 17, 2};
  auto ds = run_simulation(m.classes, m.index, st, {MomentIndex::of(0), MomentIndex({0, 0})});
  REQUIRE(ds.size() == 5);
  CHECK(ds.replications == 4000);
  CHECK(ds.at(MomentIndex::of(0), 0) == 20.0);
  for (std::size_t j = 1; j < ds.size(); ++j) {
    double p = std::exp(-ds.times[j]);
    double mean = 20 * p, var = 20 * p * (1 - p);
    CHECK(z_score(ds.at(MomentIndex::of(0), j), mean, var, st.replications) < 3.0);
    double second = var + mean * mean;
    CHECK(ds.at(MomentIndex({0, 0}), j) == doctest::Approx(second).epsilon(0.05));
  }
}

TEST_CASE("processor/resource simulation agrees with the exact transient law") {
  auto m = build(processor_resource_source(2, 1));
  auto chain = oracle::processor_resource(2, 1, 2.0, 14.0, 14.0, 2.0);
  std::vector<double> p0(chain.states.size(), 0.0);
  p0[oracle::processor_resource_start(chain, 2, 1)] = 1.0;
  auto p = oracle::transient(chain, p0, 0.5);
  auto f = [&](auto fn) { return oracle::expect(chain, p, fn); };
  double mean = f([](const std::vector<long>& s) { return double(s[0]); });
  double second = f([](const std::vector<long>& s) { return double(s[0] * s[0]); });
  double fourth = f([](const std::vector<long>& s) { return std::pow(double(s[0]), 4); });
  double rmean = f([](const std::vector<long>& s) { return double(s[2]); });

  SimulationSettings st{0.5, 0.5, 20000, 99, 4};
  auto ds = run_simulation(m.classes, m.index, st,
                           {MomentIndex::of(0), MomentIndex::of(2), MomentIndex({0, 0})});
  CHECK(z_score(ds.at(MomentIndex::of(0), 1), mean, second - mean * mean, st.replications) < 4.0);
  CHECK(z_score(ds.at(MomentIndex({0, 0}), 1), second, fourth - second * second,
                st.replications) < 4.0);
  CHECK(z_score(ds.at(MomentIndex::of(2), 1), rmean, rmean * (1 - rmean), st.replications) < 4.0);
}

TEST_CASE("a model without enabled transitions stays put") {
  auto m = build("A = (a, 1).A; B = (b, 1).B; G{A[3]} <a, b> H{B[2]}");
  CHECK(m.classes.empty());
  std::vector<double> grid = {0.0, 1.0, 2.0};
  Stream rng(0, 0);
  auto path = simulate_replication(m.classes, {3, 2}, grid, rng);
  for (const auto& s : path) CHECK(s == std::vector<long>{3, 2});
}

TEST_CASE("paths conserve group populations and absorb") {
  auto cs = build(model_a(20, 10));
  auto grid = numerics::make_grid(20.0, 0.1);
  for (std::uint64_t rep = 0; rep < 20; ++rep) {
    Stream rng(5, rep);
    auto path = simulate_replication(cs.classes, cs.index.initial(), grid, rng);
    REQUIRE(path.size() == grid.size());
    for (const auto& s : path) {
      CHECK(s[0] + s[1] + s[2] == 20);
      CHECK(s[3] + s[4] + s[5] == 10);
      for (long v : s) CHECK(v >= 0);
    }
  }
  auto death = build("A = (a, 5).stop; G{A[3]}");
  Stream rng(1, 0);
  auto path = simulate_replication(death.classes, {3}, numerics::make_grid(50.0, 1.0), rng);
  CHECK(path.back()[0] == 0);
  for (std::size_t j = 1; j < path.size(); ++j) CHECK(path[j][0] <= path[j - 1][0]);
}

TEST_CASE("results do not depend on the thread count") {
  auto m = build(model_a(30, 15));
  std::vector<MomentIndex> req = {MomentIndex({0, 3}), MomentIndex({1, 1, 4})};
  SimulationSettings st{3.0, 0.1, 101, 2024, 1};
  auto one = run_simulation(m.classes, m.index, st, req);
  for (unsigned threads : {2u, 3u, 8u}) {
    st.threads = threads;
    CHECK(run_simulation(m.classes, m.index, st, req).moments == one.moments);
  }
  st.seed = 2025;
  CHECK(run_simulation(m.classes, m.index, st, req).moments != one.moments);
}

TEST_CASE("a single replication reports the path itself") {
  auto m = build(model_b(12, 6));
  SimulationSettings st{2.0, 0.25, 1, 77, 1};
  MomentIndex cross({1, 4});
  std::vector<MomentIndex> req = {cross};
  for (std::size_t d = 0; d < 6; ++d) req.push_back(MomentIndex::of(d));
  auto ds = run_simulation(m.classes, m.index, st, req);
  CHECK_FALSE(ds.has(MomentIndex({0, 0})));
  auto grid = numerics::make_grid(st.stop_time, st.step_size);
  Stream rng(77, 0);
  auto path = simulate_replication(m.classes, m.index.initial(), grid, rng);
  for (std::size_t j = 0; j < grid.size(); ++j) {
    for (std::size_t d = 0; d < 6; ++d) CHECK(ds.at(MomentIndex::of(d), j) == path[j][d]);
    CHECK(ds.at(cross, j) == path[j][1] * path[j][4]);
  }
}
