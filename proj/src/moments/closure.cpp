#include <map>

#include "gpa/error.hpp"
#include "gpa/moments/moment_system.hpp"

namespace gpa::moments {

using semantics::RateExpr;

namespace {

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

double ipow(double base, int e) {
  double r = 1.0;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

// m(N + l) - m(N) as a sum of monomials with exact coefficients.
std::map<MomentIndex, double> jump_difference(const MomentIndex& m, const std::vector<int>& l) {
  std::map<MomentIndex, double> acc{{MomentIndex{}, 1.0}};
  for (const auto& [dim, a] : m.factors()) {
    std::map<MomentIndex, double> next;
    for (const auto& [mono, c] : acc) {
      for (int b = 0; b <= a; ++b) {
        double coef = c * binomial(a, b) * ipow(l[dim], a - b);
        if (coef == 0.0) continue;
        MomentIndex grown = mono;
        for (int t = 0; t < b; ++t) grown = grown.times_dim(dim);
        next[grown] += coef;
      }
    }
    acc = std::move(next);
  }
  acc[m] -= 1.0;
  std::erase_if(acc, [](const auto& kv) { return kv.second == 0.0; });
  return acc;
}

class ClosureBuilder {
 public:
  ClosureBuilder(ExprPool& pool, const std::map<MomentIndex, std::size_t>& slots)
      : pool_(pool), slots_(slots) {}

  NodeId expectation(const MomentIndex& m) {
    if (m.empty()) return pool_.constant(1.0);
    auto it = slots_.find(m);
    if (it == slots_.end()) throw Error("moment closure referenced an unknown of order " +
                                        std::to_string(m.order()));
    return pool_.var(it->second);
  }

  // Closure of E[rate(N) * m(N)].
  NodeId close(const RateExpr& e, const MomentIndex& m) {
    switch (e.kind()) {
      case RateExpr::Kind::kConst:
        return pool_.scaled(expectation(m), e.value());
      case RateExpr::Kind::kLinear: {
        std::vector<Operand> terms;
        for (const auto& [dim, c] : e.terms()) terms.push_back({expectation(m.times_dim(dim)), c});
        return pool_.sum(std::move(terms));
      }
      case RateExpr::Kind::kSum:
        return pool_.add(close(e.left(), m), close(e.right(), m));
      case RateExpr::Kind::kMin:
        return pool_.min(close(e.left(), m), close(e.right(), m));
      case RateExpr::Kind::kScale:
        return pool_.scaled(close(e.left(), m), e.value());
      case RateExpr::Kind::kMul:
        if (e.left().degree() == 0) return pool_.product({at_means(e.left()), close(e.right(), m)});
        if (e.right().degree() == 0) return pool_.product({at_means(e.right()), close(e.left(), m)});
        throw UnsupportedError("rate is a product of two count-dependent factors");
      case RateExpr::Kind::kRatio:
        return pool_.product({at_means(e), expectation(m)});
    }
    return pool_.constant(0.0);
  }

  // The rate with every count replaced by its mean unknown.
  NodeId at_means(const RateExpr& e) {
    if (means_.empty()) {
      for (const auto& [m, slot] : slots_) {
        if (m.order() == 1) means_.push_back(pool_.var(slot));
      }
    }
    return compile_rate(pool_, e, means_);
  }

 private:
  ExprPool& pool_;
  const std::map<MomentIndex, std::size_t>& slots_;
  std::vector<NodeId> means_;
};

}  // namespace

MomentSystem generate_moment_odes(const std::vector<semantics::TransitionClass>& classes,
                                  const semantics::StateIndex& index, int order) {
  if (order < 1) throw Error("moment order must be at least 1");
  std::vector<MomentIndex> moments = all_moments(index.size(), order);
  std::map<MomentIndex, std::size_t> slots;
  std::vector<Unknown> unknowns;
  std::vector<double> initial;
  std::vector<double> n0(index.initial().begin(), index.initial().end());
  for (const auto& m : moments) {
    slots.emplace(m, unknowns.size());
    Unknown u;
    u.moment = m;
    u.label = m.to_string(index);
    unknowns.push_back(std::move(u));
    initial.push_back(m.evaluate(n0));
  }

  ExprPool pool;
  ClosureBuilder builder(pool, slots);
  std::vector<NodeId> rhs;
  for (const auto& m : moments) {
    std::vector<Operand> terms;
    for (const auto& cls : classes) {
      for (const auto& [mono, c] : jump_difference(m, cls.jump)) {
        terms.push_back({builder.close(cls.rate, mono), c});
      }
    }
    rhs.push_back(pool.sum(std::move(terms)));
  }
  return MomentSystem(Mode::kClosure, index.size(), std::move(unknowns), std::move(pool),
                      std::move(rhs), std::move(initial));
}

}  // namespace gpa::moments
