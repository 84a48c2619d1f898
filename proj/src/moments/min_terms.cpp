#include "gpa/moments/min_terms.hpp"

#include <algorithm>
#include <set>

#include "gpa/error.hpp"

namespace gpa::moments {

namespace {

int node_order(const MomentSystem& sys, NodeId id, std::vector<int>& memo) {
  if (memo[id] >= 0) return memo[id];
  const ExprPool& pool = sys.pool();
  int order = 0;
  if (pool.node(id).op == Op::kVar) {
    const Unknown& u = sys.unknowns()[pool.node(id).first];
    order = u.kind == Unknown::Kind::kMoment ? u.moment.order() : 2;
  } else {
    for (const auto& o : pool.operands(id)) order = std::max(order, node_order(sys, o.id, memo));
  }
  return memo[id] = order;
}

}  // namespace

std::vector<MinTerm> collect_min_terms(const MomentSystem& sys, int max_order) {
  const ExprPool& pool = sys.pool();
  std::vector<int> memo(pool.size(), -1);
  std::vector<bool> visited(pool.size(), false);
  std::vector<MinTerm> out;

  std::vector<NodeId> stack;
  for (std::size_t k = sys.size(); k-- > 0;) stack.push_back(sys.rhs(k));
  while (!stack.empty()) {
    NodeId id = stack.back();
    stack.pop_back();
    if (visited[id]) continue;
    visited[id] = true;
    const Node& n = pool.node(id);
    if (n.op == Op::kVar) continue;
    auto ops = pool.operands(id);
    if (n.op == Op::kMin) {
      MinTerm t;
      t.node = id;
      t.left = ops[0].id;
      t.right = ops[1].id;
      t.max_order = node_order(sys, id, memo);
      if (t.max_order <= max_order) {
        t.id = out.size() + 1;
        out.push_back(t);
      }
    }
    for (std::size_t i = ops.size(); i-- > 0;) stack.push_back(ops[i].id);
  }
  return out;
}

int required_order(const lang::MomentExpr& expr) {
  return std::visit(
      [](const auto& node) -> int {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, lang::BinaryExpr>) {
          return std::max(required_order(*node.left), required_order(*node.right));
        } else if constexpr (std::is_same_v<T, lang::NegateExpr>) {
          return required_order(*node.operand);
        } else if constexpr (std::is_same_v<T, lang::Expectation>) {
          int p = 0;
          for (const auto& m : node.terms) {
            int order = 0;
            for (const auto& f : m.factors) order += f.second;
            p = std::max(p, order);
          }
          return p;
        } else if constexpr (std::is_same_v<T, lang::Variance> ||
                             std::is_same_v<T, lang::Covariance>) {
          return 2;
        } else if constexpr (std::is_same_v<T, lang::CentralMoment>) {
          return node.standardised ? std::max(node.order, 2) : node.order;
        } else {
          return 0;
        }
      },
      expr.node);
}

int required_order(const std::vector<lang::Command>& commands) {
  int p = 1;
  for (const auto& cmd : commands) {
    if (const auto* plot = std::get_if<lang::PlotCommand>(&cmd.kind)) {
      for (const auto& e : plot->expressions) p = std::max(p, required_order(e));
    } else {
      p = std::max(p, std::get<lang::SwitchpointsCommand>(cmd.kind).order);
    }
  }
  return p;
}

}  // namespace gpa::moments
