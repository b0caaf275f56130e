#pragma once

// Minimal tokenizer shared by the text formats. Tokens are separated by
// whitespace; characters listed in `punct` always form single-character
// tokens; `#` starts a comment running to end of line.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "opstrict/core.hpp"

namespace opstrict::detail {

struct Token {
  std::string text;
  std::size_t line = 0;
  std::size_t column = 0;
};

inline std::vector<Token> tokenize(std::string_view text,
                                   std::string_view punct) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1;
  std::size_t i = 0;
  auto start_token = [&](std::size_t l, std::size_t c) {
    out.push_back(Token{{}, l, c});
  };
  bool in_token = false;
  while (i < text.size()) {
    char ch = text[i];
    if (ch == '#') {
      while (i < text.size() && text[i] != '\n') ++i, ++col;
      in_token = false;
      continue;
    }
    if (ch == '\n') {
      ++line;
      col = 1;
      ++i;
      in_token = false;
      continue;
    }
    if (ch == ' ' || ch == '\t' || ch == '\r') {
      in_token = false;
    } else if (punct.find(ch) != std::string_view::npos) {
      start_token(line, col);
      out.back().text.push_back(ch);
      in_token = false;
    } else {
      if (!in_token) start_token(line, col);
      out.back().text.push_back(ch);
      in_token = true;
    }
    ++i;
    ++col;
  }
  return out;
}

// Groups tokens by source line, dropping empty lines.
inline std::vector<std::vector<Token>> split_lines(std::vector<Token> tokens) {
  std::vector<std::vector<Token>> lines;
  std::size_t current = 0;
  for (auto& t : tokens) {
    if (lines.empty() || t.line != current) {
      lines.emplace_back();
      current = t.line;
    }
    lines.back().push_back(std::move(t));
  }
  return lines;
}

// Cursor over one line's tokens with error reporting.
class LineCursor {
 public:
  explicit LineCursor(const std::vector<Token>& tokens) : tokens_(tokens) {}

  bool done() const { return pos_ >= tokens_.size(); }

  const Token& peek() const {
    if (done()) fail_at_end("unexpected end of line");
    return tokens_[pos_];
  }

  const Token& next() {
    const Token& t = peek();
    ++pos_;
    return t;
  }

  const Token& expect(std::string_view text) {
    const Token& t = peek();
    if (t.text != text)
      throw ParseError("expected '" + std::string(text) + "', found '" +
                           t.text + "'",
                       t.line, t.column);
    ++pos_;
    return t;
  }

  bool accept(std::string_view text) {
    if (!done() && tokens_[pos_].text == text) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect_end() const {
    if (!done())
      throw ParseError("unexpected token '" + tokens_[pos_].text + "'",
                       tokens_[pos_].line, tokens_[pos_].column);
  }

  std::size_t number() {
    const Token& t = next();
    std::size_t value = 0;
    if (t.text.empty()) throw ParseError("expected a number", t.line, t.column);
    for (char c : t.text) {
      if (c < '0' || c > '9')
        throw ParseError("expected a number, found '" + t.text + "'", t.line,
                         t.column);
      value = value * 10 + static_cast<std::size_t>(c - '0');
    }
    return value;
  }

  // Tokens up to (not including) the closing parenthesis, consuming both
  // parentheses.
  std::vector<Token> parenthesized() {
    expect("(");
    std::vector<Token> items;
    while (peek().text != ")") items.push_back(next());
    next();
    return items;
  }

  [[noreturn]] void fail(const std::string& message) const {
    if (done()) fail_at_end(message);
    throw ParseError(message, tokens_[pos_].line, tokens_[pos_].column);
  }

 private:
  [[noreturn]] void fail_at_end(const std::string& message) const {
    const Token& last = tokens_.back();
    throw ParseError(message, last.line, last.column + last.text.size());
  }

  const std::vector<Token>& tokens_;
  std::size_t pos_ = 0;
};

}  // namespace opstrict::detail
