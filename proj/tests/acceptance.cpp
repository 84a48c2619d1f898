// Acceptance suite: one PASS/FAIL line per criterion. Pass criterion numbers
// as arguments to run a subset.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <thread>
#include <string>
#include <vector>

#include "gpa/analysis/evaluate.hpp"
#include "gpa/analysis/switch_points.hpp"
#include "gpa/error.hpp"
#include "gpa/io/run.hpp"
#include "gpa/lang/parser.hpp"
#include "gpa/lang/printer.hpp"
#include "gpa/moments/moment_system.hpp"
#include "gpa/numerics/rk4.hpp"
#include "gpa/semantics/state_index.hpp"
#include "gpa/semantics/transition_class.hpp"
#include "gpa/ssa/simulator.hpp"
#include "oracle/ctmc_oracle.hpp"
#include "support.hpp"

using namespace gpa;
using moments::MomentIndex;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

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

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

void note(Outcome& o, const std::string& s) {
  if (!o.detail.empty()) o.detail += "; ";
  o.detail += s;
}

void fail(Outcome& o, const std::string& s) {
  o.pass = false;
  note(o, s);
}

numerics::DataSet solve(const Built& m, moments::Mode mode, int order, double stop, double step,
                        long density) {
  auto sys = mode == moments::Mode::kLna ? moments::generate_lna_odes(m.classes, m.index)
                                          : moments::generate_moment_odes(m.classes, m.index, order);
  return numerics::integrate_rk4(sys, sys.initial_state(), stop, step, density);
}

std::vector<double> first_order_crossings(const Built& m, std::size_t term, double stop,
                                          double step) {
  auto sys = moments::generate_moment_odes(m.classes, m.index, 1);
  auto ds = numerics::integrate_rk4(sys, sys.initial_state(), stop, step, 10);
  auto report = analysis::switch_points(sys, 1, ds);
  if (term >= report.series.size()) return {};
  return report.series[term].crossings;
}

double variance(const numerics::DataSet& ds, std::size_t dim, std::size_t j) {
  auto d = static_cast<std::uint32_t>(dim);
  double mean = ds.at(MomentIndex::of(dim), j);
  return ds.at(MomentIndex({d, d}), j) - mean * mean;
}

unsigned worker_threads() { return std::max(1u, std::thread::hardware_concurrency()); }

// 1. Generated drift and transition classes of the client/server model.
Outcome vector_field_fidelity() {
  Outcome o;
  auto m = build(model_a());
  if (m.classes.size() != 5) fail(o, std::to_string(m.classes.size()) + " classes");
  const std::vector<std::vector<int>> jumps = {
      {-1, 1, 0, -1, 1, 0}, {0, -1, 1, 1, -1, 0}, {1, 0, -1, 0, 0, 0},
      {0, 0, 0, -1, 0, 1},  {0, 0, 0, 1, 0, -1}};
  const oracle::ClientServerRates r{2.0, 0.1, 0.20, 1.0, 2.0};
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 200.0);
  double worst = 0.0;
  std::set<std::vector<int>> seen;
  for (const auto& c : m.classes) seen.insert(c.jump);
  for (const auto& l : jumps) {
    if (!seen.count(l)) fail(o, "missing jump vector");
  }
  for (int trial = 0; trial < 100; ++trial) {
    std::array<double, 6> x;
    for (double& v : x) v = u(rng);
    std::vector<double> xv(x.begin(), x.end());
    auto expected = oracle::client_server_drift(r, x);
    std::vector<double> rates = {std::min(x[0], x[3]) * r.req, std::min(x[1], x[4]) * r.data,
                                 x[2] * r.think, x[3] * r.brk, x[5] * r.reset};
    for (std::size_t k = 0; k < m.classes.size() && k < 5; ++k) {
      double got = m.classes[k].rate.evaluate(xv);
      worst = std::max(worst, std::fabs(got - rates[k]) / std::max(1.0, std::fabs(rates[k])));
    }
    auto sys = moments::generate_moment_odes(m.classes, m.index, 1);
    auto d = sys.evaluate(xv);
    for (std::size_t i = 0; i < 6; ++i) {
      worst = std::max(worst, std::fabs(d[i] - expected[i]) / std::max(1.0, std::fabs(expected[i])));
    }
  }
  if (worst > 1e-12) fail(o, "relative error " + fmt("%.3g", worst));
  note(o, "5 classes, max relative error " + fmt("%.3g", worst));
  return o;
}

// 2. First-order switch points.
Outcome switch_point_times() {
  Outcome o;
  auto check = [&](const std::string& name, double t, double centre, double tol) {
    bool ok = std::fabs(t - centre) <= tol;
    std::string s = name + " t=" + fmt("%.4f", t) + " (want " + fmt("%.2f", centre) + "+-" +
                    fmt("%.2f", tol) + ")";
    ok ? note(o, s) : fail(o, s);
  };
  auto a = build(model_a());
  auto ca = first_order_crossings(a, 0, 10.0, 0.001);
  if (ca.empty()) {
    fail(o, "model A: no crossing");
  } else {
    check("model A", ca[0], 2.1, 0.1);
  }
  auto b = build(model_b());
  auto cb = first_order_crossings(b, 0, 10.0, 0.001);
  if (cb.size() < 2) {
    fail(o, "model B: " + std::to_string(cb.size()) + " crossings");
  } else {
    check("model B", cb[0], 2.8, 0.15);
    check("model B", cb[1], 4.8, 0.25);
  }
  auto pr = build(processor_resource_source(50, 20));
  auto cp = first_order_crossings(pr, 0, 3.0, 0.001);
  if (cp.size() != 1 || !(cp[0] > 0.1 && cp[0] < 0.2)) {
    fail(o, "processor/resource crossings " + std::to_string(cp.size()));
  } else {
    note(o, "processor/resource t=" + fmt("%.4f", cp[0]));
  }
  return o;
}

// 3. Desk-scale processor/resource against the exact transient law.
Outcome oracle_exactness() {
  Outcome o;
  const long m = 3, n = 2;
  auto built = build(processor_resource_source(m, n));
  auto chain = oracle::processor_resource(m, n, 2.0, 14.0, 14.0, 2.0);
  std::vector<double> p0(chain.states.size(), 0.0);
  p0[oracle::processor_resource_start(chain, m, n)] = 1.0;

  ssa::SimulationSettings st{3.0, 0.3, 20000, 2024, worker_threads()};
  std::vector<MomentIndex> req;
  for (std::uint32_t d = 0; d < 4; ++d) {
    req.push_back(MomentIndex::of(d));
    req.push_back(MomentIndex({d, d}));
  }
  auto sim = ssa::run_simulation(built.classes, built.index, st, req);
  auto ode = solve(built, moments::Mode::kClosure, 2, 3.0, 0.3, 100);
  const double R = static_cast<double>(st.replications);

  int checks = 0, outside = 0;
  double worst_z = 0.0;
  for (std::size_t j = 1; j < sim.size(); ++j) {
    auto p = oracle::transient(chain, p0, sim.times[j]);
    for (std::size_t d = 0; d < 4; ++d) {
      auto central = [&](int k) {
        double mu = oracle::expect(chain, p, [&](const std::vector<long>& s) { return double(s[d]); });
        return oracle::expect(chain, p, [&](const std::vector<long>& s) {
          return std::pow(double(s[d]) - mu, k);
        });
      };
      double mean = oracle::expect(chain, p, [&](const std::vector<long>& s) { return double(s[d]); });
      double var = central(2);
      double mu4 = central(4);
      double zm = std::fabs(sim.at(MomentIndex::of(d), j) - mean) / std::sqrt(var / R);
      double zv = std::fabs(variance(sim, d, j) - var) / std::sqrt((mu4 - var * var) / R);
      for (double z : {zm, zv}) {
        ++checks;
        worst_z = std::max(worst_z, z);
        if (z > 3.0) ++outside;
      }
    }
  }
  if (outside > 0) fail(o, std::to_string(outside) + " of " + std::to_string(checks) + " outside 99.7% CI");
  note(o, std::to_string(checks) + " CI checks, max |z| " + fmt("%.2f", worst_z));

  // Mean equations only involve first moments, so every closure order gives
  // the same means here.
  auto p3 = oracle::transient(chain, p0, 3.0);
  std::string per_dim = "closure mean error at t=3:";
  bool within = true;
  for (std::size_t d = 0; d < 4; ++d) {
    double exact = oracle::expect(chain, p3, [&](const std::vector<long>& s) { return double(s[d]); });
    double approx = ode.at(MomentIndex::of(d), ode.size() - 1);
    double rel = std::fabs(approx - exact) / exact;
    within = within && rel < 0.10;
    per_dim += " " + built.index.label(d) + " " + fmt("%.4f", approx) + " vs " + fmt("%.4f", exact) +
               " (" + fmt("%.1f", 100 * rel) + "%)";
  }
  within ? note(o, per_dim) : fail(o, per_dim);
  return o;
}

// 4. Population scaling.
Outcome scale_invariance() {
  Outcome o;
  const double step = 0.01;
  double worst_rel = 0.0, worst_shift = 0.0;
  struct Case {
    std::function<std::string(long)> source;
    double stop;
  };
  std::vector<Case> cases = {
      {[](long k) { return model_a(100 * k, 50 * k); }, 10.0},
      {[](long k) { return model_b(100 * k, 50 * k); }, 10.0},
      {[](long k) { return processor_resource_source(50 * k, 20 * k); }, 3.0}};
  for (const auto& c : cases) {
    auto base = build(c.source(1));
    auto ds1 = solve(base, moments::Mode::kClosure, 1, c.stop, step, 10);
    auto cr1 = analysis::switch_points(moments::generate_moment_odes(base.classes, base.index, 1),
                                       1, ds1);
    for (long k : {2L, 4L}) {
      auto scaled = build(c.source(k));
      auto dsk = solve(scaled, moments::Mode::kClosure, 1, c.stop, step, 10);
      for (const auto& [mono, col] : ds1.moments) {
        const auto& other = dsk.moments.at(mono);
        for (std::size_t j = 0; j < col.size(); ++j) {
          double expect = k * col[j];
          double denom = std::max(std::fabs(expect), 1e-300);
          if (expect != other[j]) worst_rel = std::max(worst_rel, std::fabs(other[j] - expect) / denom);
        }
      }
      auto crk = analysis::switch_points(
          moments::generate_moment_odes(scaled.classes, scaled.index, 1), 1, dsk);
      if (crk.series.size() != cr1.series.size()) {
        fail(o, "min term count changed under scaling");
        continue;
      }
      for (std::size_t s = 0; s < crk.series.size(); ++s) {
        const auto& a = cr1.series[s].crossings;
        const auto& b = crk.series[s].crossings;
        if (a.size() != b.size()) {
          fail(o, "crossing count changed under scaling");
          continue;
        }
        for (std::size_t i = 0; i < a.size(); ++i) worst_shift = std::max(worst_shift, std::fabs(a[i] - b[i]));
      }
    }
  }
  // Near-zero entries cancel to rounding noise; measure relative to column scale.
  if (worst_rel > 1e-9) fail(o, "relative scaling error " + fmt("%.3g", worst_rel));
  if (worst_shift >= step) fail(o, "crossing shift " + fmt("%.3g", worst_shift));
  note(o, "max relative error " + fmt("%.3g", worst_rel) + ", max crossing shift " +
              fmt("%.3g", worst_shift));
  return o;
}

// 5. Normalised ODE error shrinks with the population.
Outcome convergence_trend() {
  Outcome o;
  const std::vector<long> scales = {1, 4, 16};
  const std::vector<long> reps = {4000, 2000, 1000};
  std::vector<double> mean_err, var_err;
  for (std::size_t i = 0; i < scales.size(); ++i) {
    long n = scales[i];
    auto m = build(model_a(100 * n, 50 * n));
    double S = static_cast<double>(m.index.total_population());
    auto ode = solve(m, moments::Mode::kClosure, 2, 10.0, 0.01, 10);
    ssa::SimulationSettings st{10.0, 0.01, reps[i], 42, worker_threads()};
    auto sim = ssa::run_simulation(m.classes, m.index, st, {MomentIndex::of(0), MomentIndex({0, 0})});
    double em = 0.0, ev = 0.0;
    for (std::size_t j = 0; j < ode.size(); ++j) {
      em = std::max(em, std::fabs(ode.at(MomentIndex::of(0), j) - sim.at(MomentIndex::of(0), j)) / S);
      ev = std::max(ev, std::fabs(variance(ode, 0, j) - variance(sim, 0, j)) / S);
    }
    mean_err.push_back(em);
    var_err.push_back(ev);
  }
  std::string means = "mean/S:", vars = "var/S:";
  for (std::size_t i = 0; i < scales.size(); ++i) {
    means += " n=" + std::to_string(scales[i]) + " " + fmt("%.4g", mean_err[i]);
    vars += " n=" + std::to_string(scales[i]) + " " + fmt("%.4g", var_err[i]);
  }
  for (std::size_t i = 1; i < scales.size(); ++i) {
    if (!(mean_err[i] < 0.9 * mean_err[i - 1])) fail(o, "mean error not decreasing at n=" + std::to_string(scales[i]));
  }
  if (!(var_err.back() < 0.9 * var_err.front())) fail(o, "variance error not decreasing");
  note(o, means);
  note(o, vars);
  return o;
}

// 6. Linear noise and closure variances before the first switch point.
Outcome lna_matches_closure() {
  Outcome o;
  auto m = build(model_a());
  auto closure = solve(m, moments::Mode::kClosure, 2, 1.5, 0.01, 10);
  auto lna = solve(m, moments::Mode::kLna, 2, 1.5, 0.01, 10);
  std::vector<MomentIndex> req;
  for (std::uint32_t d = 0; d < 6; ++d) {
    req.push_back(MomentIndex::of(d));
    req.push_back(MomentIndex({d, d}));
    req.push_back(MomentIndex({d, d, d}));
    req.push_back(MomentIndex({d, d, d, d}));
  }
  ssa::SimulationSettings st{1.5, 0.15, 2000, 7, worker_threads()};
  auto sim = ssa::run_simulation(m.classes, m.index, st, req);
  const double R = static_cast<double>(st.replications);

  double worst_rel = 0.0;
  for (std::size_t j = 1; j < closure.size(); ++j) {
    for (std::size_t d = 0; d < 6; ++d) {
      double a = variance(closure, d, j), b = variance(lna, d, j);
      worst_rel = std::max(worst_rel, std::fabs(a - b) / std::max(std::fabs(a), std::fabs(b)));
    }
  }
  if (worst_rel > 0.01) fail(o, "closure/LNA relative gap " + fmt("%.4f", worst_rel));
  note(o, "closure/LNA max relative gap " + fmt("%.3g", worst_rel));

  int outside = 0, checks = 0;
  double worst_z = 0.0;
  for (std::size_t j = 1; j < sim.size(); ++j) {
    std::size_t k = j * 15;  // same time on the ODE grid
    for (std::size_t d = 0; d < 6; ++d) {
      auto dd = static_cast<std::uint32_t>(d);
      double mu = sim.at(MomentIndex::of(d), j);
      double e2 = sim.at(MomentIndex({dd, dd}), j);
      double e3 = sim.at(MomentIndex({dd, dd, dd}), j);
      double e4 = sim.at(MomentIndex({dd, dd, dd, dd}), j);
      double var = e2 - mu * mu;
      double mu4 = e4 - 4 * mu * e3 + 6 * mu * mu * e2 - 3 * mu * mu * mu * mu;
      double se = std::sqrt(std::max(mu4 - var * var, 0.0) / R);
      for (const auto* ds : {&closure, &lna}) {
        double z = std::fabs(variance(*ds, d, k) - var) / se;
        ++checks;
        worst_z = std::max(worst_z, z);
        if (z > 3.0) ++outside;
      }
    }
  }
  if (outside > 0) fail(o, std::to_string(outside) + " of " + std::to_string(checks) + " outside SSA 99.7% band");
  note(o, std::to_string(checks) + " band checks, max |z| " + fmt("%.2f", worst_z));
  return o;
}

// 7. Conservation and thread-count independence.
Outcome conservation_determinism() {
  Outcome o;
  auto m = build(model_b(60, 30));
  auto grid = numerics::make_grid(10.0, 0.05);
  long violations = 0;
  for (std::uint64_t rep = 0; rep < 200; ++rep) {
    ssa::Stream rng(11, rep);
    auto path = ssa::simulate_replication(m.classes, m.index.initial(), grid, rng);
    for (const auto& s : path) {
      if (s[0] + s[1] + s[2] != 60 || s[3] + s[4] + s[5] != 30) ++violations;
    }
  }
  if (violations) fail(o, std::to_string(violations) + " SSA states off the population");
  double drift = 0.0;
  for (int order : {1, 2, 3}) {
    auto ds = solve(m, moments::Mode::kClosure, order, 10.0, 0.01, 10);
    for (std::size_t j = 0; j < ds.size(); ++j) {
      double c = ds.at(MomentIndex::of(0), j) + ds.at(MomentIndex::of(1), j) + ds.at(MomentIndex::of(2), j);
      double s = ds.at(MomentIndex::of(3), j) + ds.at(MomentIndex::of(4), j) + ds.at(MomentIndex::of(5), j);
      drift = std::max({drift, std::fabs(c - 60) / 60, std::fabs(s - 30) / 30});
    }
  }
  if (drift > 1e-12) fail(o, "ODE population drift " + fmt("%.3g", drift));
  note(o, "SSA exact, ODE relative drift " + fmt("%.3g", drift));

  fs::path root = fs::temp_directory_path() / ("gpa_acceptance_" + std::to_string(std::random_device{}()));
  auto run_with = [&](unsigned threads) {
    io::RunConfig cfg;
    cfg.input = fs::path(GPA_MODELS_DIR) / "client_server_a.gpa";
    cfg.out_dir = root / std::to_string(threads);
    cfg.seed = 99;
    cfg.threads = threads;
    std::ostringstream out, err;
    std::vector<fs::path> written;
    if (io::run_file(cfg, out, err, &written) != 0) fail(o, "run failed: " + err.str());
    std::vector<std::string> contents;
    for (const auto& p : written) contents.push_back(slurp(p.string()));
    return contents;
  };
  auto one = run_with(1);
  auto eight = run_with(8);
  fs::remove_all(root);
  if (one.empty() || one != eight) fail(o, "outputs differ between 1 and 8 threads");
  note(o, std::to_string(one.size()) + " files identical across 1 and 8 threads");
  return o;
}

// 8. Grammar corpus.
Outcome grammar_corpus() {
  Outcome o;
  auto list = [](const char* sub) {
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(fs::path(GPA_CORPUS_DIR) / sub)) files.push_back(e.path());
    std::sort(files.begin(), files.end());
    return files;
  };
  auto valid = list("valid");
  auto invalid = list("invalid");
  std::string all_text;
  for (const auto& p : valid) {
    std::string text = slurp(p.string());
    all_text += text;
    try {
      auto first = lang::parse_model(text);
      lang::validate(first);
      std::string printed = lang::to_string(first);
      auto second = lang::parse_model(printed);
      if (!(first == second) || lang::to_string(second) != printed) fail(o, p.filename().string() + " does not round-trip");
    } catch (const std::exception& e) {
      fail(o, p.filename().string() + ": " + e.what());
    }
  }
  for (const char* token : {"stop", "<>", "->", "|", "odes(", "simulation(", "comparison(",
                            "comparsion(", "plot(", "plotSwitchpoints(", "Var[", "Cov[",
                            "Central[", "StandardisedCentral[", "E[", "^", "//"}) {
    if (all_text.find(token) == std::string::npos) fail(o, std::string("corpus lacks ") + token);
  }
  int positioned = 0;
  for (const auto& p : invalid) {
    try {
      lang::validate(lang::parse_model(slurp(p.string())));
      fail(o, p.filename().string() + " accepted");
    } catch (const ParseError& e) {
      if (e.line() > 0 && e.column() > 0) ++positioned;
    } catch (const ValidationError& e) {
      if (e.line() > 0 && e.column() > 0) ++positioned;
    }
  }
  if (valid.size() < 25) fail(o, "only " + std::to_string(valid.size()) + " valid files");
  if (invalid.size() < 10 || positioned != static_cast<int>(invalid.size())) {
    fail(o, std::to_string(positioned) + " of " + std::to_string(invalid.size()) + " invalid files positioned");
  }
  note(o, std::to_string(valid.size()) + " valid round-trip, " + std::to_string(positioned) +
              " invalid positioned");
  return o;
}

struct Criterion {
  int number;
  const char* name;
  double budget_seconds;
  Outcome (*run)();
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria = {
      {1, "vector-field fidelity", 1.0, vector_field_fidelity},
      {2, "switch-point times", 5.0, switch_point_times},
      {3, "oracle exactness at desk scale", 30.0, oracle_exactness},
      {4, "scale invariance", 5.0, scale_invariance},
      {5, "convergence trend", 600.0, convergence_trend},
      {6, "LNA agrees with closure", 120.0, lna_matches_closure},
      {7, "conservation and determinism", 60.0, conservation_determinism},
      {8, "grammar corpus", 1.0, grammar_corpus},
  };
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

  int failures = 0;
  for (const auto& c : criteria) {
    if (!selected.empty() && !selected.count(c.number)) continue;
    auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome.pass = false;
      outcome.detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs >= c.budget_seconds) {
      outcome.pass = false;
      note(outcome, "over the " + fmt("%g", c.budget_seconds) + " s budget");
    }
    if (!outcome.pass) ++failures;
    std::printf("%s criterion %d (%s): %s [%.2f s]\n", outcome.pass ? "PASS" : "FAIL", c.number,
                c.name, outcome.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
