#include "gpa/moments/moment_index.hpp"

#include <algorithm>
#include <functional>

namespace gpa::moments {

MomentIndex::MomentIndex(std::vector<std::uint32_t> dims) : dims_(std::move(dims)) {
  std::sort(dims_.begin(), dims_.end());
}

std::vector<std::pair<std::size_t, int>> MomentIndex::factors() const {
  std::vector<std::pair<std::size_t, int>> out;
  for (auto d : dims_) {
    if (!out.empty() && out.back().first == d) {
      ++out.back().second;
    } else {
      out.emplace_back(d, 1);
    }
  }
  return out;
}

MomentIndex MomentIndex::times(const MomentIndex& other) const {
  std::vector<std::uint32_t> d = dims_;
  d.insert(d.end(), other.dims_.begin(), other.dims_.end());
  return MomentIndex(std::move(d));
}

MomentIndex MomentIndex::times_dim(std::size_t dim) const {
  std::vector<std::uint32_t> d = dims_;
  d.push_back(static_cast<std::uint32_t>(dim));
  return MomentIndex(std::move(d));
}

double MomentIndex::evaluate(std::span<const double> x) const {
  double v = 1.0;
  for (auto d : dims_) v *= x[d];
  return v;
}

std::string MomentIndex::to_string(const semantics::StateIndex& index) const {
  std::string out = "E[";
  bool first = true;
  for (auto [dim, exponent] : factors()) {
    if (!first) out += " ";
    first = false;
    out += index.label(dim);
    if (exponent != 1) out += "^" + std::to_string(exponent);
  }
  return out + "]";
}

bool operator<(const MomentIndex& a, const MomentIndex& b) {
  if (a.dims_.size() != b.dims_.size()) return a.dims_.size() < b.dims_.size();
  return a.dims_ < b.dims_;
}

std::vector<MomentIndex> all_moments(std::size_t dims, int max_order) {
  std::vector<MomentIndex> out;
  std::vector<std::uint32_t> current;
  // Non-decreasing sequences of a fixed length enumerate in lexicographic
  // order when generated depth-first.
  std::function<void(std::uint32_t, int)> extend = [&](std::uint32_t from, int remaining) {
    if (remaining == 0) {
      out.emplace_back(current);
      return;
    }
    for (std::uint32_t d = from; d < dims; ++d) {
      current.push_back(d);
      extend(d, remaining - 1);
      current.pop_back();
    }
  };
  for (int order = 1; order <= max_order; ++order) extend(0, order);
  return out;
}

}  // namespace gpa::moments
