#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "gpa/semantics/state_index.hpp"

namespace gpa::moments {

/// Monomial Π N_d^{a_d} of count variables, stored as the sorted multiset of
/// its dimensions (x0²·x3 is {0, 0, 3}). The empty index is the constant 1.
class MomentIndex {
 public:
  MomentIndex() = default;
  explicit MomentIndex(std::vector<std::uint32_t> dims);
  static MomentIndex of(std::size_t dim) { return MomentIndex({static_cast<std::uint32_t>(dim)}); }

  int order() const { return static_cast<int>(dims_.size()); }
  bool empty() const { return dims_.empty(); }
  const std::vector<std::uint32_t>& dims() const { return dims_; }

  /// (dim, exponent) pairs in increasing dim order.
  std::vector<std::pair<std::size_t, int>> factors() const;

  MomentIndex times(const MomentIndex& other) const;
  MomentIndex times_dim(std::size_t dim) const;

  double evaluate(std::span<const double> x) const;

  /// "E[G:A^2 H:B]"
  std::string to_string(const semantics::StateIndex& index) const;

  /// Graded lexicographic order: lower order first, then lexicographic.
  friend bool operator<(const MomentIndex& a, const MomentIndex& b);
  friend bool operator==(const MomentIndex& a, const MomentIndex& b) = default;

 private:
  std::vector<std::uint32_t> dims_;
};

/// All monomials of order 1..max_order over `dims` variables, graded
/// lexicographic.
std::vector<MomentIndex> all_moments(std::size_t dims, int max_order);

}  // namespace gpa::moments
