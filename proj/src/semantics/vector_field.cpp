#include "gpa/semantics/vector_field.hpp"

#include <cmath>

namespace gpa::semantics {

void VectorField::evaluate(std::span<const double> v, std::span<double> out) const {
  for (std::size_t d = 0; d < rows_.size(); ++d) {
    double s = 0.0;
    for (const auto& [c, rate] : rows_[d]) s += c * rate.evaluate(v);
    out[d] = s;
  }
}

std::vector<double> VectorField::evaluate(std::span<const double> v) const {
  std::vector<double> out(rows_.size());
  evaluate(v, out);
  return out;
}

std::string VectorField::to_string(const StateIndex& index) const {
  auto name = [&](std::size_t d) { return index.label(d); };
  std::string out;
  for (std::size_t d = 0; d < rows_.size(); ++d) {
    out += "d/dt " + index.label(d) + " =";
    if (rows_[d].empty()) out += " 0";
    for (std::size_t i = 0; i < rows_[d].size(); ++i) {
      auto [c, rate] = rows_[d][i];
      out += c < 0 ? " - " : (i == 0 ? " " : " + ");
      if (std::fabs(c) != 1.0) out += format_number(std::fabs(c)) + "*";
      out += rate.to_string(name);
    }
    out += "\n";
  }
  return out;
}

VectorField build_vector_field(const std::vector<TransitionClass>& classes,
                               const StateIndex& index) {
  std::vector<VectorField::Terms> rows(index.size());
  for (const auto& k : classes) {
    for (std::size_t d = 0; d < index.size(); ++d) {
      if (k.jump[d] == 0) continue;
      auto& row = rows[d];
      bool merged = false;
      for (auto& term : row) {
        if (term.second == k.rate) {
          term.first += k.jump[d];
          merged = true;
          break;
        }
      }
      if (!merged) row.emplace_back(static_cast<double>(k.jump[d]), k.rate);
    }
  }
  for (auto& row : rows) std::erase_if(row, [](const auto& t) { return t.first == 0.0; });
  return VectorField(std::move(rows));
}

}  // namespace gpa::semantics
