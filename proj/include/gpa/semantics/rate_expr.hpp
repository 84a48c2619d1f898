#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace gpa::semantics {

/// Symbolic rate of a transition class as a function of the count vector.
///
/// Node kinds:
///   Const(c)           constant
///   Linear(Σ c_i·x_i)  linear form over count dimensions
///   Sum(a, b)          a + b
///   Min(a, b)          bounded-capacity cooperation
///   Scale(c, a)        c·a, c > 0
///   Mul(a, b)          product; one side is always a degree-0 prefactor
///   Ratio(a, b)        a / b, with 0/0 = 0
///
/// Ratio only appears in models that are not split-free. Values are
/// immutable and cheap to copy (shared nodes).
class RateExpr {
 public:
  enum class Kind { kConst, kLinear, kSum, kMin, kScale, kMul, kRatio };
  using LinearTerms = std::vector<std::pair<std::size_t, double>>;  // sorted by dim

  /// Const(0).
  RateExpr();

  static RateExpr constant(double c);
  static RateExpr linear(LinearTerms terms);
  static RateExpr variable(std::size_t dim, double coefficient = 1.0);
  static RateExpr sum(const RateExpr& a, const RateExpr& b);
  static RateExpr min(const RateExpr& a, const RateExpr& b);
  static RateExpr scale(double c, const RateExpr& a);
  static RateExpr mul(const RateExpr& a, const RateExpr& b);
  static RateExpr ratio(const RateExpr& numerator, const RateExpr& denominator);

  Kind kind() const { return node_->kind; }
  double value() const { return node_->value; }  // Const value or Scale factor
  const LinearTerms& terms() const { return node_->terms; }
  const RateExpr& left() const { return *node_->left; }
  const RateExpr& right() const { return *node_->right; }

  bool is_zero() const { return kind() == Kind::kConst && value() == 0.0; }

  double evaluate(std::span<const double> x) const;
  /// Polynomial degree of homogeneity (Ratio and Const are 0, Linear is 1).
  int degree() const;
  bool contains_ratio() const;

  using NameFn = std::function<std::string(std::size_t)>;
  std::string to_string(const NameFn& name) const;

  friend bool operator==(const RateExpr& a, const RateExpr& b);

 private:
  struct Node {
    Kind kind = Kind::kConst;
    double value = 0.0;
    LinearTerms terms;
    std::shared_ptr<const RateExpr> left;
    std::shared_ptr<const RateExpr> right;
  };

  explicit RateExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static RateExpr binary(Kind kind, const RateExpr& a, const RateExpr& b);

  std::shared_ptr<const Node> node_;
};

/// Compact decimal form used in printed expressions ("2", "0.1", "1e-05").
std::string format_number(double value);

}  // namespace gpa::semantics
