#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "gpa/lang/ast.hpp"

namespace gpa::lang {

/// Name resolution tables shared by validation and the semantic layer.
struct ComponentTable {
  std::map<std::string, double> parameters;
  std::map<std::string, const ComponentExpr*> definitions;

  /// Resolved value of a rate or multiplicity. Throws ValidationError when
  /// the parameter is undefined.
  double value_of(const ValueRef& ref) const;
};

/// A parsed file whose names, numbers and analysis settings have all been
/// checked. Immutable once built.
class ValidatedModel {
 public:
  const ModelFile& ast() const { return *file_; }
  const ComponentTable& table() const { return table_; }
  const GroupedModel& system() const { return file_->system; }
  const std::vector<AnalysisBlock>& analyses() const { return file_->analyses; }

  double parameter(const std::string& name) const { return table_.parameters.at(name); }
  double rate(const Prefix& prefix) const { return table_.value_of(prefix.rate); }
  /// Initial copies of a group member (already checked to be integral).
  long multiplicity(const GroupMember& member) const;

  /// Derivative names reachable in a group, in discovery order.
  const std::vector<std::string>& group_derivatives(const std::string& label) const {
    return group_derivatives_.at(label);
  }
  bool has_group(const std::string& label) const { return group_derivatives_.count(label) > 0; }

 private:
  friend ValidatedModel validate(ModelFile file);

  // Shared so that the definition pointers in table_ stay valid on copy.
  std::shared_ptr<const ModelFile> file_;
  ComponentTable table_;
  std::map<std::string, std::vector<std::string>> group_derivatives_;
};

/// Resolves and checks every name and number in `file`. Throws
/// ValidationError (positioned where possible).
ValidatedModel validate(ModelFile file);

/// Multiplicities must lie within this distance of an integer.
inline constexpr double kIntegralTolerance = 1e-9;

}  // namespace gpa::lang
