#include "gpa/lang/lexer.hpp"

#include <cctype>
#include <charconv>

#include "gpa/error.hpp"

namespace gpa::lang {

namespace {

bool is_ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

}  // namespace

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> tokens;
  int line = 1;
  int column = 1;
  std::size_t i = 0;

  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n && i < src.size(); ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
  };

  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }

    Token tok;
    tok.line = line;
    tok.column = column;

    if (is_ident_start(c)) {
      std::size_t j = i;
      while (j < src.size() && is_ident_char(src[j])) ++j;
      tok.kind = TokenKind::kIdentifier;
      tok.text = std::string(src.substr(i, j - i));
      advance(j - i);
    } else if (is_digit(c)) {
      std::size_t j = i;
      bool integral = true;
      while (j < src.size() && is_digit(src[j])) ++j;
      // A '.' belongs to the number only when a digit follows; "(a,r).P"
      // never puts a digit straight after the dot.
      if (j + 1 < src.size() && src[j] == '.' && is_digit(src[j + 1])) {
        integral = false;
        ++j;
        while (j < src.size() && is_digit(src[j])) ++j;
      }
      if (j < src.size() && (src[j] == 'e' || src[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < src.size() && (src[k] == '+' || src[k] == '-')) ++k;
        if (k < src.size() && is_digit(src[k])) {
          integral = false;
          j = k;
          while (j < src.size() && is_digit(src[j])) ++j;
        }
      }
      tok.kind = TokenKind::kNumber;
      tok.text = std::string(src.substr(i, j - i));
      tok.integral = integral;
      auto [ptr, ec] = std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(),
                                       tok.number);
      if (ec != std::errc() || ptr != tok.text.data() + tok.text.size()) {
        throw ParseError(line, column, "malformed number '" + tok.text + "'");
      }
      advance(j - i);
    } else if (c == '"') {
      std::size_t j = i + 1;
      while (j < src.size() && src[j] != '"' && src[j] != '\n') ++j;
      if (j >= src.size() || src[j] != '"') {
        throw ParseError(line, column, "unterminated string");
      }
      tok.kind = TokenKind::kString;
      tok.text = std::string(src.substr(i + 1, j - i - 1));
      advance(j - i + 1);
    } else if (c == '-' && i + 1 < src.size() && src[i + 1] == '>') {
      tok.kind = TokenKind::kSymbol;
      tok.text = "->";
      advance(2);
    } else if (std::string_view("=;(),.+<>{}[]|:^-*/").find(c) != std::string_view::npos) {
      tok.kind = TokenKind::kSymbol;
      tok.text = std::string(1, c);
      advance(1);
    } else {
      std::string shown = std::isprint(static_cast<unsigned char>(c))
                              ? std::string(1, c)
                              : "\\x" + std::to_string(static_cast<unsigned char>(c));
      throw ParseError(line, column, "unexpected character '" + shown + "'");
    }
    tokens.push_back(std::move(tok));
  }

  Token end;
  end.kind = TokenKind::kEnd;
  end.line = line;
  end.column = column;
  tokens.push_back(end);
  return tokens;
}

std::string describe(const Token& token) {
  switch (token.kind) {
    case TokenKind::kEnd:
      return "end of input";
    case TokenKind::kString:
      return "string \"" + token.text + "\"";
    case TokenKind::kNumber:
      return "number " + token.text;
    case TokenKind::kIdentifier:
      return "'" + token.text + "'";
    case TokenKind::kSymbol:
      return "'" + token.text + "'";
  }
  return "?";
}

}  // namespace gpa::lang
