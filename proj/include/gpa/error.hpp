#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace gpa {

/// Base class of every error reported by the analyser.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Syntax error with position and the set of tokens that would have been
/// accepted.
class ParseError : public Error {
 public:
  ParseError(int line, int column, std::string message,
             std::vector<std::string> expected = {});

  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& detail() const { return detail_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  int line_;
  int column_;
  std::string detail_;
  std::vector<std::string> expected_;
};

/// Semantic error in an otherwise well-formed file. Line 0 means the
/// position is unknown.
class ValidationError : public Error {
 public:
  ValidationError(int line, int column, std::string message);

  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& detail() const { return detail_; }

 private:
  int line_;
  int column_;
  std::string detail_;
};

/// Requested analysis is not available for this model (e.g. linear noise
/// mode on a model whose rates contain ratios).
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// Integration produced a non-finite state.
class NumericalError : public Error {
 public:
  NumericalError(double time, const std::string& message);

  double time() const { return time_; }

 private:
  double time_;
};

}  // namespace gpa
