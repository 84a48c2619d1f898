#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "gpa/semantics/rate_expr.hpp"

namespace gpa::moments {

using NodeId = std::uint32_t;

/// Expression nodes over ODE unknowns.
///
///   Const        value
///   Var          unknown number `first`
///   Sum          value + Σ coef_i·operand_i   (canonical: flattened, merged, sorted)
///   Mul          Π operand_i
///   Min          min(operand_0, operand_1)
///   Ratio        operand_0 / operand_1, 0 when the denominator is 0
///   Indicator    1 if operand_0 <= operand_1 else 0
enum class Op : std::uint8_t { kConst, kVar, kSum, kMul, kMin, kRatio, kIndicator };

struct Operand {
  NodeId id;
  double coef;

  bool operator==(const Operand&) const = default;
};

struct Node {
  Op op = Op::kConst;
  double value = 0.0;
  std::uint32_t first = 0;  // operand offset, or the unknown for Var
  std::uint32_t count = 0;  // operand count
};

/// Hash-consed arena of expression nodes. Structurally equal expressions get
/// the same id, so id equality is structural equality. Children always
/// precede parents, which makes id order a valid evaluation order.
class ExprPool {
 public:
  NodeId constant(double value);
  NodeId var(std::size_t unknown);
  NodeId sum(std::vector<Operand> terms, double constant = 0.0);
  NodeId add(NodeId a, NodeId b) { return sum({{a, 1.0}, {b, 1.0}}); }
  NodeId scaled(NodeId a, double c) { return sum({{a, c}}); }
  NodeId product(std::vector<NodeId> factors);
  /// min(a, a) collapses to a.
  NodeId min(NodeId a, NodeId b);
  NodeId ratio(NodeId numerator, NodeId denominator);
  NodeId indicator_le(NodeId a, NodeId b);

  std::size_t size() const { return nodes_.size(); }
  const Node& node(NodeId id) const { return nodes_[id]; }
  std::span<const Operand> operands(NodeId id) const {
    const Node& n = nodes_[id];
    return {operands_.data() + n.first, n.count};
  }
  bool is_constant(NodeId id, double value) const {
    return nodes_[id].op == Op::kConst && nodes_[id].value == value;
  }

  /// Value of node `id` given already-computed values of all its children.
  double evaluate_node(NodeId id, std::span<const double> unknowns,
                       std::span<const double> values) const;

  /// Ids reachable from `roots`, ascending (children first).
  std::vector<NodeId> reachable(std::span<const NodeId> roots) const;

  using NameFn = std::function<std::string(std::size_t)>;
  std::string to_string(NodeId id, const NameFn& unknown_name) const;

 private:
  NodeId intern(Op op, double value, std::uint32_t var, std::vector<Operand> operands);

  struct Key {
    Op op;
    double value;
    std::uint32_t var;
    std::vector<Operand> operands;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const;
  };

  std::vector<Node> nodes_;
  std::vector<Operand> operands_;
  std::unordered_map<Key, NodeId, KeyHash> index_;
};

/// Translates a rate into the pool with count dimension d replaced by
/// dim_nodes[d].
NodeId compile_rate(ExprPool& pool, const semantics::RateExpr& rate,
                    std::span<const NodeId> dim_nodes);

}  // namespace gpa::moments
