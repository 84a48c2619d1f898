#pragma once

#include <string>

#include "gpa/lang/ast.hpp"

namespace gpa::lang {

/// Shortest decimal text that reads back to the same double; integral
/// values keep a trailing ".0" so they stay real literals.
std::string format_real(double value);

std::string to_string(const GCPair& pair);
std::string to_string(const Moment& moment);
std::string to_string(const MomentExpr& expr);
std::string to_string(const Summation& summation);
std::string to_string(const ComponentExpr& expr);
std::string to_string(const GroupedModel& model);
std::string to_string(const Command& command);
std::string to_string(const AnalysisBlock& analysis);

/// Canonical source text for a whole file; parse_model() of the result is
/// structurally equal to the input.
std::string to_string(const ModelFile& file);

}  // namespace gpa::lang
