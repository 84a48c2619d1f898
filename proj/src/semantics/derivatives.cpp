#include "gpa/semantics/derivatives.hpp"

#include <deque>
#include <map>
#include <set>

#include "gpa/error.hpp"
#include "gpa/lang/printer.hpp"

namespace gpa::semantics {

std::string nested_derivative_name(const lang::Summation& summation) {
  return "(" + lang::to_string(summation) + ")";
}

const lang::Summation* behaviour_of(const lang::ComponentTable& table, const std::string& name) {
  if (name == "stop") return nullptr;
  std::set<std::string> visited;
  std::string current = name;
  while (true) {
    auto it = table.definitions.find(current);
    if (it == table.definitions.end()) {
      throw ValidationError(0, 0, "undefined component " + current);
    }
    if (!visited.insert(current).second) {
      throw ValidationError(0, 0, "component " + name + " is defined only in terms of itself");
    }
    const lang::ComponentExpr& body = *it->second;
    if (const auto* s = std::get_if<lang::Summation>(&body.node)) return s;
    if (const auto* r = std::get_if<lang::ComponentRef>(&body.node)) {
      current = r->name;
      continue;
    }
    throw ValidationError(body.pos.line, body.pos.column,
                          "cooperation inside component definition " + current +
                              " is not supported; use groups in the system equation");
  }
}

std::vector<Derivative> explore_derivatives(const lang::ComponentTable& table,
                                            const std::vector<std::string>& starts) {
  std::vector<Derivative> out;
  std::vector<const lang::Summation*> bodies;
  std::map<std::string, std::size_t> index;

  auto discover = [&](const std::string& name, const lang::Summation* body) {
    auto [it, inserted] = index.emplace(name, out.size());
    if (inserted) {
      out.push_back(Derivative{name, {}});
      bodies.push_back(body);
    }
    return it->second;
  };

  for (const auto& s : starts) discover(s, behaviour_of(table, s));

  for (std::size_t i = 0; i < out.size(); ++i) {
    const lang::Summation* body = bodies[i];
    if (body == nullptr) continue;
    std::vector<LocalTransition> transitions;
    for (const auto& p : body->prefixes) {
      std::size_t target = 0;
      switch (p.next.kind) {
        case lang::Continuation::Kind::kStop:
          target = discover("stop", nullptr);
          break;
        case lang::Continuation::Kind::kNamed:
          target = discover(p.next.name, behaviour_of(table, p.next.name));
          break;
        case lang::Continuation::Kind::kNested:
          target = discover(nested_derivative_name(**p.next.nested), &**p.next.nested);
          break;
      }
      transitions.push_back(LocalTransition{p.action, table.value_of(p.rate), target});
    }
    out[i].transitions = std::move(transitions);
  }
  return out;
}

}  // namespace gpa::semantics
