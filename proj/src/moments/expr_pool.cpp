#include "gpa/moments/expr_pool.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace gpa::moments {

namespace {

std::size_t mix(std::size_t h, std::uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

}  // namespace

std::size_t ExprPool::KeyHash::operator()(const Key& k) const {
  std::size_t h = static_cast<std::size_t>(k.op);
  h = mix(h, std::bit_cast<std::uint64_t>(k.value));
  h = mix(h, k.var);
  for (const auto& o : k.operands) {
    h = mix(h, o.id);
    h = mix(h, std::bit_cast<std::uint64_t>(o.coef));
  }
  return h;
}

NodeId ExprPool::intern(Op op, double value, std::uint32_t var, std::vector<Operand> operands) {
  if (value == 0.0) value = 0.0;  // fold -0.0
  Key key{op, value, var, std::move(operands)};
  if (auto it = index_.find(key); it != index_.end()) return it->second;

  Node n;
  n.op = op;
  n.value = value;
  if (op == Op::kVar) {
    n.first = var;
  } else {
    n.first = static_cast<std::uint32_t>(operands_.size());
    n.count = static_cast<std::uint32_t>(key.operands.size());
    operands_.insert(operands_.end(), key.operands.begin(), key.operands.end());
  }
  auto id = static_cast<NodeId>(nodes_.size());
  nodes_.push_back(n);
  index_.emplace(std::move(key), id);
  return id;
}

NodeId ExprPool::constant(double value) { return intern(Op::kConst, value, 0, {}); }

NodeId ExprPool::var(std::size_t unknown) {
  return intern(Op::kVar, 0.0, static_cast<std::uint32_t>(unknown), {});
}

NodeId ExprPool::sum(std::vector<Operand> terms, double constant_term) {
  std::vector<Operand> flat;
  for (const auto& t : terms) {
    if (t.coef == 0.0) continue;
    const Node& n = nodes_[t.id];
    if (n.op == Op::kConst) {
      constant_term += t.coef * n.value;
    } else if (n.op == Op::kSum) {
      constant_term += t.coef * n.value;
      for (const auto& inner : operands(t.id)) flat.push_back({inner.id, t.coef * inner.coef});
    } else {
      flat.push_back(t);
    }
  }
  std::sort(flat.begin(), flat.end(), [](const Operand& a, const Operand& b) { return a.id < b.id; });
  std::vector<Operand> merged;
  for (const auto& t : flat) {
    if (!merged.empty() && merged.back().id == t.id) {
      merged.back().coef += t.coef;
    } else {
      merged.push_back(t);
    }
  }
  std::erase_if(merged, [](const Operand& o) { return o.coef == 0.0; });
  if (merged.empty()) return constant(constant_term);
  if (merged.size() == 1 && merged[0].coef == 1.0 && constant_term == 0.0) return merged[0].id;
  return intern(Op::kSum, constant_term, 0, std::move(merged));
}

NodeId ExprPool::product(std::vector<NodeId> factors) {
  double scale = 1.0;
  std::vector<Operand> rest;
  for (NodeId f : factors) {
    const Node& n = nodes_[f];
    if (n.op == Op::kConst) {
      scale *= n.value;
    } else if (n.op == Op::kMul) {
      for (const auto& inner : operands(f)) rest.push_back({inner.id, 1.0});
    } else {
      rest.push_back({f, 1.0});
    }
  }
  if (scale == 0.0 || rest.empty()) return constant(scale);
  std::sort(rest.begin(), rest.end(), [](const Operand& a, const Operand& b) { return a.id < b.id; });
  NodeId core = rest.size() == 1 ? rest[0].id : intern(Op::kMul, 0.0, 0, std::move(rest));
  return scale == 1.0 ? core : scaled(core, scale);
}

NodeId ExprPool::min(NodeId a, NodeId b) {
  if (a == b) return a;
  return intern(Op::kMin, 0.0, 0, {{a, 1.0}, {b, 1.0}});
}

NodeId ExprPool::ratio(NodeId numerator, NodeId denominator) {
  if (is_constant(numerator, 0.0)) return numerator;
  return intern(Op::kRatio, 0.0, 0, {{numerator, 1.0}, {denominator, 1.0}});
}

NodeId ExprPool::indicator_le(NodeId a, NodeId b) {
  if (a == b) return constant(1.0);
  return intern(Op::kIndicator, 0.0, 0, {{a, 1.0}, {b, 1.0}});
}

double ExprPool::evaluate_node(NodeId id, std::span<const double> unknowns,
                               std::span<const double> values) const {
  const Node& n = nodes_[id];
  const Operand* ops = operands_.data() + n.first;
  switch (n.op) {
    case Op::kConst:
      return n.value;
    case Op::kVar:
      return unknowns[n.first];
    case Op::kSum: {
      double s = n.value;
      for (std::uint32_t i = 0; i < n.count; ++i) s += ops[i].coef * values[ops[i].id];
      return s;
    }
    case Op::kMul: {
      double p = 1.0;
      for (std::uint32_t i = 0; i < n.count; ++i) p *= values[ops[i].id];
      return p;
    }
    case Op::kMin:
      return std::min(values[ops[0].id], values[ops[1].id]);
    case Op::kRatio: {
      double den = values[ops[1].id];
      return den == 0.0 ? 0.0 : values[ops[0].id] / den;
    }
    case Op::kIndicator:
      return values[ops[0].id] <= values[ops[1].id] ? 1.0 : 0.0;
  }
  return 0.0;
}

std::vector<NodeId> ExprPool::reachable(std::span<const NodeId> roots) const {
  std::vector<bool> mark(nodes_.size(), false);
  for (NodeId r : roots) mark[r] = true;
  // Parents have larger ids than children, so one descending sweep suffices.
  for (std::size_t i = nodes_.size(); i-- > 0;) {
    if (!mark[i] || nodes_[i].op == Op::kVar) continue;
    for (const auto& o : operands(static_cast<NodeId>(i))) mark[o.id] = true;
  }
  std::vector<NodeId> out;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (mark[i]) out.push_back(static_cast<NodeId>(i));
  }
  return out;
}

std::string ExprPool::to_string(NodeId id, const NameFn& unknown_name) const {
  using semantics::format_number;
  const Node& n = nodes_[id];
  auto ops = operands(id);
  auto atom = [&](NodeId child) {
    Op op = nodes_[child].op;
    bool simple = op == Op::kConst || op == Op::kVar || op == Op::kMin || op == Op::kIndicator;
    return simple ? to_string(child, unknown_name) : "(" + to_string(child, unknown_name) + ")";
  };
  switch (n.op) {
    case Op::kConst:
      return format_number(n.value);
    case Op::kVar:
      return unknown_name(n.first);
    case Op::kSum: {
      std::string out;
      bool first = true;
      for (const auto& o : ops) {
        double c = o.coef;
        if (first) {
          if (c < 0) out += "-";
        } else {
          out += c < 0 ? " - " : " + ";
        }
        if (std::fabs(c) != 1.0) out += format_number(std::fabs(c)) + "*";
        out += nodes_[o.id].op == Op::kSum ? "(" + to_string(o.id, unknown_name) + ")"
                                             : to_string(o.id, unknown_name);
        first = false;
      }
      if (n.value != 0.0) out += (n.value < 0 ? " - " : " + ") + format_number(std::fabs(n.value));
      return out;
    }
    case Op::kMul: {
      std::string out;
      for (std::size_t i = 0; i < ops.size(); ++i) {
        if (i > 0) out += "*";
        out += atom(ops[i].id);
      }
      return out;
    }
    case Op::kMin:
      return "min(" + to_string(ops[0].id, unknown_name) + ", " +
             to_string(ops[1].id, unknown_name) + ")";
    case Op::kRatio:
      return atom(ops[0].id) + "/" + atom(ops[1].id);
    case Op::kIndicator:
      return "1{" + to_string(ops[0].id, unknown_name) + " <= " +
             to_string(ops[1].id, unknown_name) + "}";
  }
  return "?";
}

NodeId compile_rate(ExprPool& pool, const semantics::RateExpr& rate,
                    std::span<const NodeId> dim_nodes) {
  using Kind = semantics::RateExpr::Kind;
  switch (rate.kind()) {
    case Kind::kConst:
      return pool.constant(rate.value());
    case Kind::kLinear: {
      std::vector<Operand> terms;
      for (const auto& [dim, c] : rate.terms()) terms.push_back({dim_nodes[dim], c});
      return pool.sum(std::move(terms));
    }
    case Kind::kSum:
      return pool.add(compile_rate(pool, rate.left(), dim_nodes),
                      compile_rate(pool, rate.right(), dim_nodes));
    case Kind::kMin:
      return pool.min(compile_rate(pool, rate.left(), dim_nodes),
                      compile_rate(pool, rate.right(), dim_nodes));
    case Kind::kScale:
      return pool.scaled(compile_rate(pool, rate.left(), dim_nodes), rate.value());
    case Kind::kMul:
      return pool.product({compile_rate(pool, rate.left(), dim_nodes),
                           compile_rate(pool, rate.right(), dim_nodes)});
    case Kind::kRatio:
      return pool.ratio(compile_rate(pool, rate.left(), dim_nodes),
                        compile_rate(pool, rate.right(), dim_nodes));
  }
  return pool.constant(0.0);
}

}  // namespace gpa::moments
