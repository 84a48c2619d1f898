#include "gpa/error.hpp"
#include "gpa/moments/moment_system.hpp"

namespace gpa::moments {

using semantics::RateExpr;

namespace {

class LnaBuilder {
 public:
  LnaBuilder(ExprPool& pool, std::size_t dims) : pool_(pool) {
    for (std::size_t d = 0; d < dims; ++d) means_.push_back(pool_.var(d));
  }

  NodeId value(const RateExpr& e) { return compile_rate(pool_, e, means_); }

  // Partial derivative with respect to mean `dim`. A min follows its left
  // argument when left <= right.
  NodeId derivative(const RateExpr& e, std::size_t dim) {
    switch (e.kind()) {
      case RateExpr::Kind::kConst:
        return pool_.constant(0.0);
      case RateExpr::Kind::kLinear:
        for (const auto& [d, c] : e.terms()) {
          if (d == dim) return pool_.constant(c);
        }
        return pool_.constant(0.0);
      case RateExpr::Kind::kSum:
        return pool_.add(derivative(e.left(), dim), derivative(e.right(), dim));
      case RateExpr::Kind::kMin: {
        NodeId dl = derivative(e.left(), dim);
        NodeId dr = derivative(e.right(), dim);
        if (dl == dr) return dl;
        NodeId ind = pool_.indicator_le(value(e.left()), value(e.right()));
        NodeId not_ind = pool_.sum({{ind, -1.0}}, 1.0);
        return pool_.add(pool_.product({ind, dl}), pool_.product({not_ind, dr}));
      }
      case RateExpr::Kind::kScale:
        return pool_.scaled(derivative(e.left(), dim), e.value());
      case RateExpr::Kind::kMul:
        return pool_.add(pool_.product({derivative(e.left(), dim), value(e.right())}),
                         pool_.product({value(e.left()), derivative(e.right(), dim)}));
      case RateExpr::Kind::kRatio:
        break;
    }
    throw UnsupportedError("linear noise approximation requires a split-free model");
  }

 private:
  ExprPool& pool_;
  std::vector<NodeId> means_;
};

}  // namespace

MomentSystem generate_lna_odes(const std::vector<semantics::TransitionClass>& classes,
                               const semantics::StateIndex& index) {
  if (!semantics::is_split_free(classes)) {
    throw UnsupportedError("linear noise approximation requires a split-free model");
  }
  const std::size_t n = index.size();
  ExprPool pool;
  LnaBuilder builder(pool, n);

  std::vector<Unknown> unknowns;
  std::vector<double> initial;
  for (std::size_t i = 0; i < n; ++i) {
    Unknown u;
    u.moment = MomentIndex::of(i);
    u.label = u.moment.to_string(index);
    unknowns.push_back(std::move(u));
    initial.push_back(static_cast<double>(index.initial()[i]));
  }
  std::vector<std::vector<std::size_t>> cov_slot(n, std::vector<std::size_t>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      cov_slot[i][j] = cov_slot[j][i] = unknowns.size();
      Unknown u;
      u.kind = Unknown::Kind::kCovariance;
      u.i = i;
      u.j = j;
      u.label = "Cov[" + index.label(i) + "," + index.label(j) + "]";
      unknowns.push_back(std::move(u));
      initial.push_back(0.0);
    }
  }

  std::vector<NodeId> rates;
  for (const auto& cls : classes) rates.push_back(builder.value(cls.rate));

  // Jacobian of the drift, J[i][m] = Σ_k l^k_i ∂f^k/∂v_m.
  std::vector<std::vector<NodeId>> jac(n, std::vector<NodeId>(n));
  {
    std::vector<std::vector<std::vector<Operand>>> acc(n, std::vector<std::vector<Operand>>(n));
    for (const auto& cls : classes) {
      for (std::size_t m = 0; m < n; ++m) {
        NodeId d = builder.derivative(cls.rate, m);
        if (pool.is_constant(d, 0.0)) continue;
        for (std::size_t i = 0; i < n; ++i) {
          if (cls.jump[i] != 0) acc[i][m].push_back({d, static_cast<double>(cls.jump[i])});
        }
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t m = 0; m < n; ++m) jac[i][m] = pool.sum(std::move(acc[i][m]));
    }
  }

  std::vector<NodeId> rhs;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Operand> terms;
    for (std::size_t k = 0; k < classes.size(); ++k) {
      if (classes[k].jump[i] != 0) terms.push_back({rates[k], static_cast<double>(classes[k].jump[i])});
    }
    rhs.push_back(pool.sum(std::move(terms)));
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      std::vector<Operand> terms;
      for (std::size_t m = 0; m < n; ++m) {
        if (!pool.is_constant(jac[i][m], 0.0)) {
          terms.push_back({pool.product({jac[i][m], pool.var(cov_slot[m][j])}), 1.0});
        }
        if (!pool.is_constant(jac[j][m], 0.0)) {
          terms.push_back({pool.product({pool.var(cov_slot[i][m]), jac[j][m]}), 1.0});
        }
      }
      for (std::size_t k = 0; k < classes.size(); ++k) {
        int w = classes[k].jump[i] * classes[k].jump[j];
        if (w != 0) terms.push_back({rates[k], static_cast<double>(w)});
      }
      rhs.push_back(pool.sum(std::move(terms)));
    }
  }
  return MomentSystem(Mode::kLna, n, std::move(unknowns), std::move(pool), std::move(rhs),
                      std::move(initial));
}

}  // namespace gpa::moments
