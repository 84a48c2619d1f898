#include "gpa/lang/validator.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <type_traits>

#include "gpa/error.hpp"
#include "gpa/lang/printer.hpp"
#include "gpa/semantics/derivatives.hpp"

namespace gpa::lang {

double ComponentTable::value_of(const ValueRef& ref) const {
  if (ref.is_literal()) return std::get<double>(ref.value);
  const auto& name = std::get<std::string>(ref.value);
  auto it = parameters.find(name);
  if (it == parameters.end()) {
    throw ValidationError(ref.pos.line, ref.pos.column, "undefined parameter " + name);
  }
  return it->second;
}

long ValidatedModel::multiplicity(const GroupMember& member) const {
  if (!member.multiplicity) return 1;
  return std::lround(table_.value_of(*member.multiplicity));
}

namespace {

[[noreturn]] void fail(const SourcePos& pos, const std::string& message) {
  throw ValidationError(pos.line, pos.column, message);
}

class Validator {
 public:
  Validator(const ModelFile& file, ComponentTable& table,
            std::map<std::string, std::vector<std::string>>& groups)
      : file_(file), table_(table), groups_(groups) {}

  void run() {
    for (const auto& p : file_.parameters) {
      if (!std::isfinite(p.value)) fail(p.pos, "parameter " + p.name + " is not finite");
      table_.parameters[p.name] = p.value;
    }
    for (const auto& c : file_.components) {
      if (table_.parameters.count(c.name)) {
        fail(c.pos, "component " + c.name + " clashes with a parameter name");
      }
      table_.definitions[c.name] = &c.body;
    }
    for (const auto& c : file_.components) check_component(c.name, c.body);
    check_system(file_.system);
    for (const auto& a : file_.analyses) check_analysis(a);
  }

 private:
  void check_rate(const ValueRef& rate) {
    double r = table_.value_of(rate);
    if (!std::isfinite(r)) fail(rate.pos, "rate is not finite");
    if (r < 0) fail(rate.pos, "negative rate " + format_real(r));
    if (r == 0) fail(rate.pos, "rate must be positive");
  }

  void check_summation(const Summation& s) {
    for (const auto& p : s.prefixes) {
      check_rate(p.rate);
      switch (p.next.kind) {
        case Continuation::Kind::kNamed:
          if (!table_.definitions.count(p.next.name)) {
            fail(p.pos, "undefined component " + p.next.name);
          }
          break;
        case Continuation::Kind::kNested:
          check_summation(**p.next.nested);
          break;
        case Continuation::Kind::kStop:
          break;
      }
    }
  }

  void check_component(const std::string& name, const ComponentExpr& body) {
    if (const auto* s = std::get_if<Summation>(&body.node)) {
      check_summation(*s);
    } else if (const auto* r = std::get_if<ComponentRef>(&body.node)) {
      if (!table_.definitions.count(r->name)) fail(r->pos, "undefined component " + r->name);
      try {
        semantics::behaviour_of(table_, name);
      } catch (const ValidationError& e) {
        fail(body.pos, e.detail());
      }
    } else {
      fail(body.pos, "cooperation inside component definition " + name +
                         " is not supported; use groups in the system equation");
    }
  }

  void check_system(const GroupedModel& m) {
    if (const auto* c = std::get_if<GroupCooperation>(&m.node)) {
      check_system(*c->left);
      check_system(*c->right);
      return;
    }
    const auto& g = std::get<Group>(m.node);
    if (groups_.count(g.label)) fail(g.pos, "duplicate group label " + g.label);
    std::vector<std::string> starts;
    for (const auto& member : g.members) {
      if (!table_.definitions.count(member.component)) {
        fail(member.pos, "undefined component " + member.component);
      }
      if (member.multiplicity) {
        double x = table_.value_of(*member.multiplicity);
        if (!std::isfinite(x)) fail(member.multiplicity->pos, "multiplicity is not finite");
        if (std::fabs(x - std::round(x)) > kIntegralTolerance) {
          fail(member.multiplicity->pos,
               "multiplicity " + format_real(x) + " is not an integer");
        }
        if (std::round(x) < 0) fail(member.multiplicity->pos, "negative multiplicity");
      }
      starts.push_back(member.component);
    }
    std::vector<std::string> names;
    for (const auto& d : semantics::explore_derivatives(table_, starts)) names.push_back(d.name);
    groups_[g.label] = std::move(names);
  }

  void check_grid(double stop_time, double step_size, const SourcePos& pos) {
    if (!(stop_time > 0)) fail(pos, "stopTime must be positive");
    if (!(step_size > 0)) fail(pos, "stepSize must be positive");
    if (step_size > stop_time) fail(pos, "stepSize exceeds stopTime");
  }

  void check_pair(const GCPair& p) {
    auto it = groups_.find(p.group);
    if (it == groups_.end()) fail(p.pos, "unknown group label " + p.group);
    const auto& names = it->second;
    if (std::find(names.begin(), names.end(), p.component) == names.end()) {
      fail(p.pos, "component " + p.component + " is not reachable in group " + p.group);
    }
  }

  void check_expression(const MomentExpr& e, const SourcePos& at) {
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, BinaryExpr>) {
            check_expression(*n.left, at);
            check_expression(*n.right, at);
          } else if constexpr (std::is_same_v<T, NegateExpr>) {
            check_expression(*n.operand, at);
          } else if constexpr (std::is_same_v<T, Expectation>) {
            for (const auto& m : n.terms) {
              for (const auto& [pair, exponent] : m.factors) {
                check_pair(pair);
                if (exponent < 1) fail(pair.pos, "exponents must be positive integers");
              }
            }
          } else if constexpr (std::is_same_v<T, Variance>) {
            for (const auto& p : n.terms) check_pair(p);
          } else if constexpr (std::is_same_v<T, Covariance>) {
            check_pair(n.first);
            check_pair(n.second);
          } else if constexpr (std::is_same_v<T, CentralMoment>) {
            check_pair(n.pair);
            if (n.order < 1) fail(n.pair.pos, "central moment order must be at least 1");
          } else if constexpr (std::is_same_v<T, ParameterRef>) {
            if (!table_.parameters.count(n.name)) fail(n.pos, "undefined parameter " + n.name);
          }
        },
        e.node);
  }

  void check_commands(const std::vector<Command>& commands) {
    for (const auto& c : commands) {
      if (const auto* s = std::get_if<SwitchpointsCommand>(&c.kind)) {
        if (s->order < 1) fail(c.pos, "plotSwitchpoints order must be at least 1");
      } else {
        for (const auto& e : std::get<PlotCommand>(c.kind).expressions) check_expression(e, c.pos);
      }
      if (c.redirect && c.redirect->empty()) fail(c.pos, "empty redirect file name");
    }
  }

  void check_odes(const OdesAnalysis& a) {
    check_grid(a.params.stop_time, a.params.step_size, a.pos);
    if (a.params.density < 1) fail(a.pos, "density must be at least 1");
    check_commands(a.commands);
  }

  void check_simulation(const SimulationAnalysis& a) {
    check_grid(a.params.stop_time, a.params.step_size, a.pos);
    if (a.params.replications < 1) fail(a.pos, "replications must be at least 1");
    check_commands(a.commands);
  }

  void check_analysis(const AnalysisBlock& block) {
    if (const auto* o = std::get_if<OdesAnalysis>(&block)) {
      check_odes(*o);
    } else if (const auto* s = std::get_if<SimulationAnalysis>(&block)) {
      check_simulation(*s);
    } else {
      const auto& c = std::get<ComparisonAnalysis>(block);
      check_odes(c.odes);
      check_simulation(c.simulation);
      if (c.odes.params.stop_time != c.simulation.params.stop_time) {
        fail(c.pos, "stop time mismatch between compared analyses");
      }
      if (c.odes.params.step_size != c.simulation.params.step_size) {
        fail(c.pos, "step size mismatch between compared analyses");
      }
      check_commands(c.commands);
    }
  }

  const ModelFile& file_;
  ComponentTable& table_;
  std::map<std::string, std::vector<std::string>>& groups_;
};

}  // namespace

ValidatedModel validate(ModelFile file) {
  ValidatedModel vm;
  vm.file_ = std::make_shared<const ModelFile>(std::move(file));
  Validator(*vm.file_, vm.table_, vm.group_derivatives_).run();
  return vm;
}

}  // namespace gpa::lang
