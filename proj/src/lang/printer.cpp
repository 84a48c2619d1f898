#include "gpa/lang/printer.hpp"

#include <charconv>
#include <cmath>

namespace gpa::lang {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string to_string(const ValueRef& v) {
  if (v.is_literal()) return format_real(std::get<double>(v.value));
  return std::get<std::string>(v.value);
}

std::string join_actions(const std::vector<std::string>& actions) {
  std::string out = "<";
  for (std::size_t i = 0; i < actions.size(); ++i) {
    if (i > 0) out += ",";
    out += actions[i];
  }
  return out + ">";
}

// Binding strength of moment-expression nodes, loosest first.
enum Precedence { kAdditive = 1, kMultiplicative = 2, kUnary = 3, kPower = 4, kPrimary = 5 };

int precedence(const MomentExpr& e) {
  if (const auto* b = std::get_if<BinaryExpr>(&e.node)) {
    switch (b->op) {
      case BinaryOp::kAdd:
      case BinaryOp::kSub:
        return kAdditive;
      case BinaryOp::kMul:
      case BinaryOp::kDiv:
        return kMultiplicative;
      case BinaryOp::kPow:
        return kPower;
    }
  }
  if (std::holds_alternative<NegateExpr>(e.node)) return kUnary;
  if (const auto* n = std::get_if<NumberLiteral>(&e.node)) {
    return n->value < 0 ? kUnary : kPrimary;
  }
  return kPrimary;
}

std::string wrap(const MomentExpr& e, bool parens) {
  std::string s = to_string(e);
  return parens ? "(" + s + ")" : s;
}

const char* op_text(BinaryOp op) {
  switch (op) {
    case BinaryOp::kAdd:
      return " + ";
    case BinaryOp::kSub:
      return " - ";
    case BinaryOp::kMul:
      return "*";
    case BinaryOp::kDiv:
      return "/";
    case BinaryOp::kPow:
      return "^";
  }
  return "?";
}

std::string print_commands(const std::vector<Command>& commands, const std::string& indent) {
  std::string out = "{\n";
  for (const auto& c : commands) out += indent + "  " + to_string(c) + "\n";
  return out + indent + "}";
}

std::string print_odes(const OdesAnalysis& a, const std::string& indent) {
  return "odes(stopTime = " + format_real(a.params.stop_time) +
         ", stepSize = " + format_real(a.params.step_size) +
         ", density = " + std::to_string(a.params.density) + ") " +
         print_commands(a.commands, indent);
}

std::string print_simulation(const SimulationAnalysis& a, const std::string& indent) {
  return "simulation(stopTime = " + format_real(a.params.stop_time) +
         ", stepSize = " + format_real(a.params.step_size) +
         ", replications = " + std::to_string(a.params.replications) + ") " +
         print_commands(a.commands, indent);
}

}  // namespace

std::string format_real(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  std::string s(buf, ptr);
  if (s.find_first_of(".e") == std::string::npos) s += ".0";
  return s;
}

std::string to_string(const GCPair& pair) { return pair.group + ":" + pair.component; }

std::string to_string(const Moment& moment) {
  std::string out;
  for (std::size_t i = 0; i < moment.factors.size(); ++i) {
    if (i > 0) out += " ";
    out += to_string(moment.factors[i].first);
    if (moment.factors[i].second != 1) out += "^" + std::to_string(moment.factors[i].second);
  }
  return out;
}

std::string to_string(const MomentExpr& expr) {
  return std::visit(
      Overloaded{
          [](const BinaryExpr& b) {
            int p = precedence(MomentExpr{b});
            bool left_parens, right_parens;
            if (b.op == BinaryOp::kPow) {
              left_parens = precedence(*b.left) < kPrimary;
              right_parens = precedence(*b.right) < kUnary;
            } else {
              // Left-associative: an equal-precedence right operand must be
              // bracketed to keep the tree shape.
              left_parens = precedence(*b.left) < p;
              right_parens = precedence(*b.right) <= p;
            }
            return wrap(*b.left, left_parens) + op_text(b.op) + wrap(*b.right, right_parens);
          },
          [](const NegateExpr& n) {
            return "-" + wrap(*n.operand, precedence(*n.operand) < kUnary);
          },
          [](const Expectation& e) {
            std::string out = "E[";
            for (std::size_t i = 0; i < e.terms.size(); ++i) {
              if (i > 0) out += " + ";
              out += to_string(e.terms[i]);
            }
            return out + "]";
          },
          [](const Variance& v) {
            std::string out = "Var[";
            for (std::size_t i = 0; i < v.terms.size(); ++i) {
              if (i > 0) out += " + ";
              out += to_string(v.terms[i]);
            }
            return out + "]";
          },
          [](const Covariance& c) {
            return "Cov[" + to_string(c.first) + "," + to_string(c.second) + "]";
          },
          [](const CentralMoment& c) {
            return std::string(c.standardised ? "StandardisedCentral[" : "Central[") +
                   to_string(c.pair) + "," + std::to_string(c.order) + "]";
          },
          [](const NumberLiteral& n) {
            std::string s = format_real(n.value);
            // Keep bare integers short in labels: 20.0 prints as 20.
            if (s.size() > 2 && s.compare(s.size() - 2, 2, ".0") == 0) s.resize(s.size() - 2);
            return s;
          },
          [](const ParameterRef& r) { return r.name; },
      },
      expr.node);
}

std::string to_string(const Summation& summation) {
  std::string out;
  for (std::size_t i = 0; i < summation.prefixes.size(); ++i) {
    const Prefix& p = summation.prefixes[i];
    if (i > 0) out += " + ";
    out += "(" + p.action + ", " + to_string(p.rate) + ").";
    switch (p.next.kind) {
      case Continuation::Kind::kNamed:
        out += p.next.name;
        break;
      case Continuation::Kind::kStop:
        out += "stop";
        break;
      case Continuation::Kind::kNested:
        out += "(" + to_string(**p.next.nested) + ")";
        break;
    }
  }
  return out;
}

std::string to_string(const ComponentExpr& expr) {
  return std::visit(Overloaded{
                        [](const Summation& s) { return to_string(s); },
                        [](const ComponentRef& r) { return r.name; },
                        [](const ComponentCooperation& c) {
                          return "(" + to_string(*c.left) + ") " + join_actions(c.actions) +
                                 " (" + to_string(*c.right) + ")";
                        },
                    },
                    expr.node);
}

std::string to_string(const GroupedModel& model) {
  return std::visit(Overloaded{
                        [](const Group& g) {
                          std::string out = g.label + "{";
                          for (std::size_t i = 0; i < g.members.size(); ++i) {
                            if (i > 0) out += " | ";
                            out += g.members[i].component;
                            if (g.members[i].multiplicity) {
                              out += "[" + to_string(*g.members[i].multiplicity) + "]";
                            }
                          }
                          return out + "}";
                        },
                        [](const GroupCooperation& c) {
                          auto operand = [](const GroupedModel& m) {
                            std::string s = to_string(m);
                            return std::holds_alternative<GroupCooperation>(m.node)
                                       ? "(" + s + ")"
                                       : s;
                          };
                          return operand(*c.left) + " " + join_actions(c.actions) + " " +
                                 operand(*c.right);
                        },
                    },
                    model.node);
}

std::string to_string(const Command& command) {
  std::string out = std::visit(Overloaded{
                                   [](const PlotCommand& p) {
                                     std::string s = "plot(";
                                     for (std::size_t i = 0; i < p.expressions.size(); ++i) {
                                       if (i > 0) s += ", ";
                                       s += to_string(p.expressions[i]);
                                     }
                                     return s + ")";
                                   },
                                   [](const SwitchpointsCommand& s) {
                                     return "plotSwitchpoints(" + std::to_string(s.order) + ")";
                                   },
                               },
                               command.kind);
  if (command.redirect) out += " -> \"" + *command.redirect + "\"";
  return out + ";";
}

std::string to_string(const AnalysisBlock& analysis) {
  return std::visit(Overloaded{
                        [](const OdesAnalysis& a) { return print_odes(a, ""); },
                        [](const SimulationAnalysis& a) { return print_simulation(a, ""); },
                        [](const ComparisonAnalysis& a) {
                          return "comparison(\n  " + print_odes(a.odes, "  ") + ",\n  " +
                                 print_simulation(a.simulation, "  ") + ") " +
                                 print_commands(a.commands, "");
                        },
                    },
                    analysis);
}

std::string to_string(const ModelFile& file) {
  std::string out;
  for (const auto& p : file.parameters) {
    out += p.name + " = " + format_real(p.value) + ";\n";
  }
  if (!file.parameters.empty()) out += "\n";
  for (const auto& c : file.components) {
    out += c.name + " = " + to_string(c.body) + ";\n";
  }
  if (!file.components.empty()) out += "\n";
  out += to_string(file.system) + "\n";
  for (const auto& a : file.analyses) out += "\n" + to_string(a) + "\n";
  return out;
}

}  // namespace gpa::lang
