#include "gpa/analysis/evaluate.hpp"

#include <cmath>
#include <limits>

#include "gpa/error.hpp"
#include "gpa/lang/printer.hpp"

namespace gpa::analysis {

using moments::MomentIndex;

namespace {

using Series = std::vector<double>;

std::size_t dim_of(const lang::GCPair& pair, const semantics::StateIndex& index) {
  auto d = index.find(pair.group, pair.component);
  if (!d) throw Error("unknown count " + lang::to_string(pair));
  return *d;
}

MomentIndex power(std::size_t dim, int exponent) {
  return MomentIndex(std::vector<std::uint32_t>(exponent, static_cast<std::uint32_t>(dim)));
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

class Evaluator {
 public:
  Evaluator(const numerics::DataSet& ds, const semantics::StateIndex& index,
            const Parameters& parameters)
      : ds_(ds), index_(index), parameters_(parameters) {}

  Series eval(const lang::MomentExpr& e) {
    return std::visit([&](const auto& node) { return eval_node(node); }, e.node);
  }

 private:
  Series column(const MomentIndex& m) {
    if (!ds_.has(m)) throw Error("no data for moment " + m.to_string(index_));
    if (m.empty()) return Series(ds_.size(), 1.0);
    return ds_.moments.at(m);
  }

  Series constant(double v) { return Series(ds_.size(), v); }

  Series eval_node(const lang::BinaryExpr& b) {
    Series l = eval(*b.left);
    Series r = eval(*b.right);
    for (std::size_t j = 0; j < l.size(); ++j) {
      switch (b.op) {
        case lang::BinaryOp::kAdd: l[j] += r[j]; break;
        case lang::BinaryOp::kSub: l[j] -= r[j]; break;
        case lang::BinaryOp::kMul: l[j] *= r[j]; break;
        case lang::BinaryOp::kDiv:
          l[j] = r[j] == 0.0 ? std::numeric_limits<double>::quiet_NaN() : l[j] / r[j];
          break;
        case lang::BinaryOp::kPow: l[j] = std::pow(l[j], r[j]); break;
      }
    }
    return l;
  }

  Series eval_node(const lang::NegateExpr& n) {
    Series v = eval(*n.operand);
    for (double& x : v) x = -x;
    return v;
  }

  Series eval_node(const lang::Expectation& e) {
    Series out = constant(0.0);
    for (const auto& m : e.terms) {
      Series c = column(to_moment_index(m, index_));
      for (std::size_t j = 0; j < out.size(); ++j) out[j] += c[j];
    }
    return out;
  }

  Series eval_node(const lang::Variance& v) {
    std::vector<std::size_t> dims;
    for (const auto& p : v.terms) dims.push_back(dim_of(p, index_));
    Series second = constant(0.0);
    Series mean = constant(0.0);
    for (std::size_t a : dims) {
      Series m = column(MomentIndex::of(a));
      for (std::size_t j = 0; j < mean.size(); ++j) mean[j] += m[j];
      for (std::size_t b : dims) {
        Series c = column(MomentIndex::of(a).times_dim(b));
        for (std::size_t j = 0; j < second.size(); ++j) second[j] += c[j];
      }
    }
    for (std::size_t j = 0; j < second.size(); ++j) second[j] -= mean[j] * mean[j];
    return second;
  }

  Series eval_node(const lang::Covariance& c) {
    std::size_t a = dim_of(c.first, index_);
    std::size_t b = dim_of(c.second, index_);
    Series out = column(MomentIndex::of(a).times_dim(b));
    Series ma = column(MomentIndex::of(a));
    Series mb = column(MomentIndex::of(b));
    for (std::size_t j = 0; j < out.size(); ++j) out[j] -= ma[j] * mb[j];
    return out;
  }

  Series eval_node(const lang::CentralMoment& c) {
    std::size_t d = dim_of(c.pair, index_);
    const int n = c.order;
    Series mean = column(MomentIndex::of(d));
    Series out = constant(0.0);
    for (int k = 0; k <= n; ++k) {
      Series raw = column(power(d, k));
      double coef = binomial(n, k) * ((n - k) % 2 == 0 ? 1.0 : -1.0);
      for (std::size_t j = 0; j < out.size(); ++j) {
        out[j] += coef * raw[j] * std::pow(mean[j], n - k);
      }
    }
    if (!c.standardised) return out;
    Series second = column(power(d, 2));
    for (std::size_t j = 0; j < out.size(); ++j) {
      double var = second[j] - mean[j] * mean[j];
      out[j] = var == 0.0 ? std::numeric_limits<double>::quiet_NaN()
                          : out[j] / std::pow(var, n / 2.0);
    }
    return out;
  }

  Series eval_node(const lang::NumberLiteral& n) { return constant(n.value); }

  Series eval_node(const lang::ParameterRef& p) {
    auto it = parameters_.find(p.name);
    if (it == parameters_.end()) throw Error("undefined parameter " + p.name);
    return constant(it->second);
  }

  const numerics::DataSet& ds_;
  const semantics::StateIndex& index_;
  const Parameters& parameters_;
};

void collect(const lang::MomentExpr& e, const semantics::StateIndex& index,
             std::vector<MomentIndex>& out) {
  std::visit(
      [&](const auto& node) {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, lang::BinaryExpr>) {
          collect(*node.left, index, out);
          collect(*node.right, index, out);
        } else if constexpr (std::is_same_v<T, lang::NegateExpr>) {
          collect(*node.operand, index, out);
        } else if constexpr (std::is_same_v<T, lang::Expectation>) {
          for (const auto& m : node.terms) out.push_back(to_moment_index(m, index));
        } else if constexpr (std::is_same_v<T, lang::Variance>) {
          for (const auto& a : node.terms) {
            out.push_back(MomentIndex::of(dim_of(a, index)));
            for (const auto& b : node.terms) {
              out.push_back(MomentIndex::of(dim_of(a, index)).times_dim(dim_of(b, index)));
            }
          }
        } else if constexpr (std::is_same_v<T, lang::Covariance>) {
          std::size_t a = dim_of(node.first, index);
          std::size_t b = dim_of(node.second, index);
          out.push_back(MomentIndex::of(a));
          out.push_back(MomentIndex::of(b));
          out.push_back(MomentIndex::of(a).times_dim(b));
        } else if constexpr (std::is_same_v<T, lang::CentralMoment>) {
          std::size_t d = dim_of(node.pair, index);
          int top = node.standardised ? std::max(node.order, 2) : node.order;
          for (int k = 1; k <= top; ++k) out.push_back(power(d, k));
        }
      },
      e.node);
}

}  // namespace

MomentIndex to_moment_index(const lang::Moment& moment, const semantics::StateIndex& index) {
  std::vector<std::uint32_t> dims;
  for (const auto& [pair, exponent] : moment.factors) {
    auto d = static_cast<std::uint32_t>(dim_of(pair, index));
    for (int k = 0; k < exponent; ++k) dims.push_back(d);
  }
  return MomentIndex(std::move(dims));
}

std::vector<MomentIndex> required_moments(const lang::MomentExpr& expr,
                                          const semantics::StateIndex& index) {
  std::vector<MomentIndex> out;
  collect(expr, index, out);
  return out;
}

EvaluatedSeries evaluate_expression(const lang::MomentExpr& expr, const numerics::DataSet& ds,
                                    const semantics::StateIndex& index,
                                    const Parameters& parameters) {
  Evaluator ev(ds, index, parameters);
  return {lang::to_string(expr), ev.eval(expr)};
}

}  // namespace gpa::analysis
