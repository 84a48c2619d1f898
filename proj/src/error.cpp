#include "gpa/error.hpp"

#include <string>
#include <vector>

namespace gpa {

namespace {

std::string format_parse_message(int line, int column, const std::string& message,
                                 const std::vector<std::string>& expected) {
  std::string out = std::to_string(line) + ":" + std::to_string(column) + ": " + message;
  if (!expected.empty()) {
    out += " (expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i > 0) out += i + 1 == expected.size() ? " or " : ", ";
      out += expected[i];
    }
    out += ")";
  }
  return out;
}

}  // namespace

ParseError::ParseError(int line, int column, std::string message,
                       std::vector<std::string> expected)
    : Error(format_parse_message(line, column, message, expected)),
      line_(line),
      column_(column),
      detail_(std::move(message)),
      expected_(std::move(expected)) {}

ValidationError::ValidationError(int line, int column, std::string message)
    : Error(line > 0 ? std::to_string(line) + ":" + std::to_string(column) + ": " + message
                     : message),
      line_(line),
      column_(column),
      detail_(std::move(message)) {}

NumericalError::NumericalError(double time, const std::string& message)
    : Error(message + " at t=" + std::to_string(time)), time_(time) {}

}  // namespace gpa
