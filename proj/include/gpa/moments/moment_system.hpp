#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gpa/moments/expr_pool.hpp"
#include "gpa/moments/moment_index.hpp"
#include "gpa/semantics/state_index.hpp"
#include "gpa/semantics/transition_class.hpp"

namespace gpa::moments {

enum class Mode { kClosure, kLna };

struct Unknown {
  enum class Kind { kMoment, kCovariance };
  Kind kind = Kind::kMoment;
  MomentIndex moment;     // kMoment
  std::size_t i = 0;      // kCovariance, i <= j
  std::size_t j = 0;
  std::string label;
};

/// ODE system dx/dt = rhs(x) over moment unknowns. Immutable after
/// generation; evaluate() is safe to call concurrently with separate
/// workspaces.
class MomentSystem {
 public:
  MomentSystem(Mode mode, std::size_t dims, std::vector<Unknown> unknowns, ExprPool pool,
               std::vector<NodeId> rhs, std::vector<double> initial);

  Mode mode() const { return mode_; }
  std::size_t size() const { return unknowns_.size(); }
  std::size_t dims() const { return dims_; }
  const std::vector<Unknown>& unknowns() const { return unknowns_; }
  const ExprPool& pool() const { return pool_; }
  NodeId rhs(std::size_t k) const { return rhs_[k]; }
  const std::vector<double>& initial_state() const { return initial_; }

  /// Highest raw-moment order available from this system's state.
  int max_order() const;

  std::optional<std::size_t> find(const MomentIndex& m) const;
  std::optional<std::size_t> find_covariance(std::size_t i, std::size_t j) const;

  /// Raw moment E[m] computed from a state vector, if this system carries it.
  /// LNA systems derive E[x_i x_j] as C_ij + v_i v_j.
  std::optional<double> raw_moment(const MomentIndex& m, std::span<const double> state) const;
  /// Every raw moment raw_moment() can produce.
  std::vector<MomentIndex> raw_moments() const;

  /// Scratch space for evaluate(); sized on first use.
  struct Workspace {
    std::vector<double> values;
  };
  void evaluate(std::span<const double> x, std::span<double> out, Workspace& ws) const;
  std::vector<double> evaluate(std::span<const double> x) const;

  /// One `d/dt <unknown> = <expr>` line per unknown.
  std::string dump() const;

 private:
  Mode mode_;
  std::size_t dims_;
  std::vector<Unknown> unknowns_;
  ExprPool pool_;
  std::vector<NodeId> rhs_;
  std::vector<double> initial_;
  std::vector<NodeId> program_;
  std::map<MomentIndex, std::size_t> moment_slot_;
};

/// Min-closure moment equations for every monomial of order 1..order.
/// Throws gpa::Error when order < 1 and UnsupportedError for rate shapes the
/// closure cannot express.
MomentSystem generate_moment_odes(const std::vector<semantics::TransitionClass>& classes,
                                  const semantics::StateIndex& index, int order);

/// Means plus the upper triangle of the covariance matrix under the linear
/// noise approximation. Throws UnsupportedError unless the classes are
/// split-free.
MomentSystem generate_lna_odes(const std::vector<semantics::TransitionClass>& classes,
                               const semantics::StateIndex& index);

}  // namespace gpa::moments
