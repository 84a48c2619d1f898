#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace gpa::lang {

enum class TokenKind {
  kIdentifier,
  kNumber,
  kString,  // "..." (redirect targets)
  kSymbol,  // punctuation, including the two-character "->"
  kEnd,
};

struct Token {
  TokenKind kind = TokenKind::kEnd;
  std::string text;
  double number = 0.0;
  bool integral = false;  // kNumber written without '.' or exponent
  int line = 1;
  int column = 1;
};

/// Splits GPA source into tokens. `//` starts a comment running to the end
/// of the line. Throws ParseError on characters outside the language.
std::vector<Token> tokenize(std::string_view source);

std::string describe(const Token& token);

}  // namespace gpa::lang
