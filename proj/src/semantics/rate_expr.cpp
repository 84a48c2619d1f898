#include "gpa/semantics/rate_expr.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace gpa::semantics {

std::string format_number(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

RateExpr::RateExpr() : node_(std::make_shared<const Node>()) {}

RateExpr RateExpr::constant(double c) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kConst;
  n->value = c;
  return RateExpr(std::move(n));
}

RateExpr RateExpr::linear(LinearTerms terms) {
  std::sort(terms.begin(), terms.end());
  LinearTerms merged;
  for (const auto& [dim, c] : terms) {
    if (!merged.empty() && merged.back().first == dim) {
      merged.back().second += c;
    } else {
      merged.emplace_back(dim, c);
    }
  }
  std::erase_if(merged, [](const auto& t) { return t.second == 0.0; });
  if (merged.empty()) return constant(0.0);
  auto n = std::make_shared<Node>();
  n->kind = Kind::kLinear;
  n->terms = std::move(merged);
  return RateExpr(std::move(n));
}

RateExpr RateExpr::variable(std::size_t dim, double coefficient) {
  return linear({{dim, coefficient}});
}

RateExpr RateExpr::binary(Kind kind, const RateExpr& a, const RateExpr& b) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->left = std::make_shared<const RateExpr>(a);
  n->right = std::make_shared<const RateExpr>(b);
  return RateExpr(std::move(n));
}

RateExpr RateExpr::sum(const RateExpr& a, const RateExpr& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.kind() == Kind::kLinear && b.kind() == Kind::kLinear) {
    LinearTerms t = a.terms();
    t.insert(t.end(), b.terms().begin(), b.terms().end());
    return linear(std::move(t));
  }
  if (a.kind() == Kind::kConst && b.kind() == Kind::kConst) return constant(a.value() + b.value());
  return binary(Kind::kSum, a, b);
}

RateExpr RateExpr::min(const RateExpr& a, const RateExpr& b) {
  // Rates are non-negative, so a zero side blocks the cooperation.
  if (a.is_zero() || b.is_zero()) return constant(0.0);
  return binary(Kind::kMin, a, b);
}

RateExpr RateExpr::scale(double c, const RateExpr& a) {
  if (c == 1.0) return a;
  if (c == 0.0 || a.is_zero()) return constant(0.0);
  switch (a.kind()) {
    case Kind::kConst:
      return constant(c * a.value());
    case Kind::kLinear: {
      LinearTerms t = a.terms();
      for (auto& term : t) term.second *= c;
      return linear(std::move(t));
    }
    case Kind::kScale:
      return scale(c * a.value(), a.left());
    default:
      break;
  }
  auto n = std::make_shared<Node>();
  n->kind = Kind::kScale;
  n->value = c;
  n->left = std::make_shared<const RateExpr>(a);
  return RateExpr(std::move(n));
}

RateExpr RateExpr::mul(const RateExpr& a, const RateExpr& b) {
  if (a.kind() == Kind::kConst) return scale(a.value(), b);
  if (b.kind() == Kind::kConst) return scale(b.value(), a);
  return binary(Kind::kMul, a, b);
}

RateExpr RateExpr::ratio(const RateExpr& numerator, const RateExpr& denominator) {
  if (numerator.is_zero()) return constant(0.0);
  if (numerator == denominator) return constant(1.0);
  return binary(Kind::kRatio, numerator, denominator);
}

double RateExpr::evaluate(std::span<const double> x) const {
  switch (kind()) {
    case Kind::kConst:
      return value();
    case Kind::kLinear: {
      double s = 0.0;
      for (const auto& [dim, c] : terms()) s += c * x[dim];
      return s;
    }
    case Kind::kSum:
      return left().evaluate(x) + right().evaluate(x);
    case Kind::kMin:
      return std::min(left().evaluate(x), right().evaluate(x));
    case Kind::kScale:
      return value() * left().evaluate(x);
    case Kind::kMul:
      return left().evaluate(x) * right().evaluate(x);
    case Kind::kRatio: {
      double den = right().evaluate(x);
      if (den == 0.0) return 0.0;
      return left().evaluate(x) / den;
    }
  }
  return 0.0;
}

int RateExpr::degree() const {
  switch (kind()) {
    case Kind::kConst:
    case Kind::kRatio:
      return 0;
    case Kind::kLinear:
      return 1;
    case Kind::kSum:
    case Kind::kMin:
      return std::max(left().degree(), right().degree());
    case Kind::kScale:
      return left().degree();
    case Kind::kMul:
      return left().degree() + right().degree();
  }
  return 0;
}

bool RateExpr::contains_ratio() const {
  switch (kind()) {
    case Kind::kConst:
    case Kind::kLinear:
      return false;
    case Kind::kRatio:
      return true;
    case Kind::kScale:
      return left().contains_ratio();
    default:
      return left().contains_ratio() || right().contains_ratio();
  }
}

std::string RateExpr::to_string(const NameFn& name) const {
  auto operand = [&](const RateExpr& e) {
    bool simple = e.kind() == Kind::kConst || e.kind() == Kind::kMin ||
                  (e.kind() == Kind::kLinear && e.terms().size() == 1);
    return simple ? e.to_string(name) : "(" + e.to_string(name) + ")";
  };
  switch (kind()) {
    case Kind::kConst:
      return format_number(value());
    case Kind::kLinear: {
      std::string out;
      for (std::size_t i = 0; i < terms().size(); ++i) {
        auto [dim, c] = terms()[i];
        if (i > 0) out += c < 0 ? " - " : " + ";
        double shown = i > 0 ? std::abs(c) : c;
        if (shown != 1.0) out += format_number(shown) + "*";
        out += name(dim);
      }
      return out;
    }
    case Kind::kSum:
      return left().to_string(name) + " + " + right().to_string(name);
    case Kind::kMin:
      return "min(" + left().to_string(name) + ", " + right().to_string(name) + ")";
    case Kind::kScale:
      return format_number(value()) + "*" + operand(left());
    case Kind::kMul:
      return operand(left()) + "*" + operand(right());
    case Kind::kRatio:
      return operand(left()) + "/" + operand(right());
  }
  return "?";
}

bool operator==(const RateExpr& a, const RateExpr& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case RateExpr::Kind::kConst:
      return a.value() == b.value();
    case RateExpr::Kind::kLinear:
      return a.terms() == b.terms();
    case RateExpr::Kind::kScale:
      return a.value() == b.value() && a.left() == b.left();
    default:
      return a.left() == b.left() && a.right() == b.right();
  }
}

}  // namespace gpa::semantics
