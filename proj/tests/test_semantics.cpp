#include <algorithm>
#include <random>

#include "oracle/ctmc_oracle.hpp"
#include "doctest.h"
#include "gpa/semantics/derivatives.hpp"
#include "gpa/semantics/state_index.hpp"
#include "gpa/semantics/transition_class.hpp"
#include "gpa/semantics/vector_field.hpp"
#include "support.hpp"

using namespace gpa;
using namespace gpa::semantics;

TEST_CASE("client/server state index follows declaration and discovery order") {
  auto vm = load(model_a());
  StateIndex idx = build_state_index(vm);
  REQUIRE(idx.size() == 6);
  CHECK(idx.label(0) == "Clients:Client");
  CHECK(idx.label(1) == "Clients:Client_waiting");
  CHECK(idx.label(2) == "Clients:Client_think");
  CHECK(idx.label(3) == "Servers:Server");
  CHECK(idx.label(4) == "Servers:Server_get");
  CHECK(idx.label(5) == "Servers:Server_broken");
  CHECK(idx.initial() == std::vector<long>{100, 0, 0, 50, 0, 0});
  CHECK(idx.total_population() == 150);
  CHECK(idx.find("Servers", "Server_get") == 4u);
  CHECK_FALSE(idx.find("Servers", "Client").has_value());
  CHECK(idx.group_of(4) == 1);
}

TEST_CASE("client/server has exactly the five expected transition classes") {
  auto vm = load(model_a());
  StateIndex idx = build_state_index(vm);
  auto classes = enumerate_transition_classes(vm, idx);
  REQUIRE(classes.size() == 5);
  const std::vector<std::vector<int>> jumps = {
      {-1, 1, 0, -1, 1, 0}, {0, -1, 1, 1, -1, 0}, {1, 0, -1, 0, 0, 0},
      {0, 0, 0, -1, 0, 1},  {0, 0, 0, 1, 0, -1}};
  const std::vector<std::string> actions = {"request", "data", "think", "break", "reset"};
  for (std::size_t k = 0; k < 5; ++k) {
    CHECK(classes[k].jump == jumps[k]);
    CHECK(classes[k].action == actions[k]);
  }
  // f^k from the class table, evaluated at random states.
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 200.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> x(6);
    for (double& v : x) v = u(rng);
    std::vector<double> expected = {std::min(x[0], x[3]) * 2.0, std::min(x[1], x[4]) * 1.0,
                                    x[2] * 0.2, x[3] * 0.1, x[5] * 2.0};
    for (std::size_t k = 0; k < 5; ++k) {
      CHECK(classes[k].rate.evaluate(x) == doctest::Approx(expected[k]).epsilon(1e-12));
    }
  }
  CHECK(is_split_free(classes));
}

TEST_CASE("drift at the initial client/server state") {
  auto vm = load(model_a());
  StateIndex idx = build_state_index(vm);
  VectorField f = build_vector_field(enumerate_transition_classes(vm, idx), idx);
  std::vector<double> x0 = {100, 0, 0, 50, 0, 0};
  auto v = f.evaluate(x0);
  std::vector<double> expected = {-100, 100, 0, -105, 100, 5};
  for (std::size_t i = 0; i < 6; ++i) CHECK(v[i] == doctest::Approx(expected[i]));
}

TEST_CASE("vector field matches the hand-written client/server drift") {
  auto vm = load(model_b());
  StateIndex idx = build_state_index(vm);
  VectorField f = build_vector_field(enumerate_transition_classes(vm, idx), idx);
  oracle::ClientServerRates r{2.0, 0.3, 0.35, 2.0, 0.05};
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 100.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::array<double, 6> x;
    for (double& v : x) v = u(rng);
    auto expected = oracle::client_server_drift(r, x);
    auto got = f.evaluate(std::vector<double>(x.begin(), x.end()));
    for (std::size_t i = 0; i < 6; ++i) {
      CHECK(got[i] == doctest::Approx(expected[i]).epsilon(1e-12));
    }
  }
}

TEST_CASE("propensities equal the hand-built generator on every state") {
  const long m = 3, n = 2;
  auto vm = load(processor_resource_source(m, n));
  StateIndex idx = build_state_index(vm);
  auto classes = enumerate_transition_classes(vm, idx);
  auto chain = oracle::processor_resource(m, n, 2.0, 14.0, 14.0, 2.0);
  for (std::size_t from = 0; from < chain.states.size(); ++from) {
    std::vector<double> x(chain.states[from].begin(), chain.states[from].end());
    for (std::size_t to = 0; to < chain.states.size(); ++to) {
      if (to == from) continue;
      double rate = 0.0;
      for (const auto& c : classes) {
        bool matches = true;
        for (std::size_t d = 0; d < 4; ++d) {
          matches = matches && chain.states[from][d] + c.jump[d] == chain.states[to][d];
        }
        if (matches) rate += c.rate.evaluate(x);
      }
      CHECK(rate == doctest::Approx(chain.generator[from][to]).epsilon(1e-14));
    }
  }
}

TEST_CASE("pure parallel composition has no min") {
  auto vm = load("A = (a,1).B; B = (b,2).A; C = (a,3).C; G{A[3]} <> H{C[2]}");
  StateIndex idx = build_state_index(vm);
  auto classes = enumerate_transition_classes(vm, idx);
  CHECK(classes.size() == 3);
  for (const auto& c : classes) CHECK(c.rate.kind() == RateExpr::Kind::kLinear);
}

TEST_CASE("an action offered by one side only is blocked by cooperation") {
  auto vm = load("A = (a,1).A + (b,1).A; C = (a,3).C; G{A[3]} <b> H{C[2]}");
  StateIndex idx = build_state_index(vm);
  auto classes = enumerate_transition_classes(vm, idx);
  for (const auto& c : classes) CHECK(c.action == "a");
  CHECK(classes.size() == 2);
}

TEST_CASE("choice between derivatives on a shared action is not split-free") {
  auto vm = load("A = (a,1).B; B = (a,2).A; X = (a,1).X; G{A[2]} <a> H{X[1]}");
  StateIndex idx = build_state_index(vm);
  auto classes = enumerate_transition_classes(vm, idx);
  REQUIRE(classes.size() == 2);
  CHECK_FALSE(is_split_free(classes));
  // A/(A + 2B) * min(A + 2B, X)
  std::vector<double> x = {1, 1, 1};
  CHECK(classes[0].rate.evaluate(x) == doctest::Approx(1.0 / 3.0));
  CHECK(classes[1].rate.evaluate(x) == doctest::Approx(2.0 / 3.0));
  x = {0, 0, 1};
  CHECK(classes[0].rate.evaluate(x) == 0.0);
}

TEST_CASE("a single derivative choosing the same action stays split-free") {
  auto vm = load("A = (a,1).B + (a,3).C; B = (b,1).A; C = (c,1).A; X = (a,2).X;"
                 "G{A[4]} <a> H{X[1]}");
  StateIndex idx = build_state_index(vm);
  auto classes = enumerate_transition_classes(vm, idx);
  CHECK(is_split_free(classes));
  std::vector<double> x = {4, 0, 0, 1};
  // min(4*A, 2*X) = 2 shared 1:3 between the two branches.
  CHECK(classes[0].rate.evaluate(x) == doctest::Approx(0.5));
  CHECK(classes[1].rate.evaluate(x) == doctest::Approx(1.5));
}

TEST_CASE("derivative exploration covers stop, nested choice and aliases") {
  auto vm = load("P = (a,1).((b,2).Q + (c,1).stop); Q = R; R = (d,1).P; G{P[1]}");
  const auto& names = vm.group_derivatives("G");
  REQUIRE(names.size() == 4);
  CHECK(names[0] == "P");
  CHECK(names[1].front() == '(');
  CHECK(std::find(names.begin(), names.end(), "stop") != names.end());
  CHECK(std::find(names.begin(), names.end(), "Q") != names.end());
}

TEST_CASE("repeated group members accumulate") {
  auto vm = load("A = (a,1).B; B = (b,1).A; G{A[2] | B | A[3]}");
  StateIndex idx = build_state_index(vm);
  CHECK(idx.initial() == std::vector<long>{5, 1});
}

TEST_CASE("class dump lists jumps and rates") {
  auto vm = load(processor_resource_source(50, 20));
  StateIndex idx = build_state_index(vm);
  std::string dump = dump_classes(enumerate_transition_classes(vm, idx), idx);
  CHECK(dump.find("1: acquire l=[-1,1,-1,1] rate=min(2*Processors:Processor0, "
                  "14*Resources:Resource0)") != std::string::npos);
  CHECK(dump.find("3: reset l=[0,0,1,-1] rate=2*Resources:Resource1") != std::string::npos);
}

TEST_CASE("group counts are conserved by every jump") {
  auto vm = load("A = (a,1).B; B = (b,1).A; X = (a,1).Y; Y = (c,2).X;"
                 "(G{A[3]} <a> H{X[2]}) <c> K{X[1]}");
  StateIndex idx = build_state_index(vm);
  for (const auto& c : enumerate_transition_classes(vm, idx)) {
    for (const auto& g : idx.groups()) {
      int sum = 0;
      for (std::size_t i = 0; i < g.size(); ++i) sum += c.jump[g.first_dim + i];
      CHECK(sum == 0);
    }
  }
}
