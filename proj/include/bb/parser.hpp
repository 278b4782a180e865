#pragma once

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bb/formula.hpp"

namespace bb {

/// Syntax error with 1-based source coordinates and a hint naming what the
/// parser expected instead.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string file, int line, int column, std::string detail)
      : std::runtime_error(format(file, line, column, detail)),
        file_(std::move(file)),
        line_(line),
        column_(column),
        detail_(std::move(detail)) {}

  const std::string& file() const { return file_; }
  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& detail() const { return detail_; }

  ParseError with_location(const std::string& file, int line) const {
    return ParseError(file, line, column_, detail_);
  }

 private:
  static std::string format(const std::string& file, int line, int column, const std::string& detail) {
    std::string where = file.empty() ? "" : file + ":";
    return where + std::to_string(line) + ":" + std::to_string(column) + ": " + detail;
  }

  std::string file_;
  int line_;
  int column_;
  std::string detail_;
};

namespace detail {

enum class Tok { LParen, RParen, Tilde, Amp, Pipe, Arrow, DArrow, True, False, Ident, End };

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

inline const char* token_name(Tok t) {
  switch (t) {
    case Tok::LParen:
      return "'('";
    case Tok::RParen:
      return "')'";
    case Tok::Tilde:
      return "'~'";
    case Tok::Amp:
      return "'&'";
    case Tok::Pipe:
      return "'|'";
    case Tok::Arrow:
      return "'->'";
    case Tok::DArrow:
      return "'<->'";
    case Tok::True:
      return "'true'";
    case Tok::False:
      return "'false'";
    case Tok::Ident:
      return "identifier";
    default:
      return "end of input";
  }
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_blank_and_comments();
      int line = line_, col = col_;
      if (eof()) {
        out.push_back({Tok::End, "", line, col});
        return out;
      }
      char c = peek();
      if (c == '(') {
        advance();
        out.push_back({Tok::LParen, "(", line, col});
      } else if (c == ')') {
        advance();
        out.push_back({Tok::RParen, ")", line, col});
      } else if (c == '~') {
        advance();
        out.push_back({Tok::Tilde, "~", line, col});
      } else if (c == '&') {
        advance();
        out.push_back({Tok::Amp, "&", line, col});
      } else if (c == '|') {
        advance();
        out.push_back({Tok::Pipe, "|", line, col});
      } else if (c == '-') {
        advance();
        expect_char('>', "'->'", line, col);
        out.push_back({Tok::Arrow, "->", line, col});
      } else if (c == '<') {
        advance();
        expect_char('-', "'<->'", line, col);
        expect_char('>', "'<->'", line, col);
        out.push_back({Tok::DArrow, "<->", line, col});
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::string ident;
        while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) {
          ident += peek();
          advance();
        }
        Tok kind = ident == "true" ? Tok::True : ident == "false" ? Tok::False : Tok::Ident;
        out.push_back({kind, std::move(ident), line, col});
      } else {
        throw ParseError("", line_, col_, std::string("unexpected character '") + c + "'");
      }
    }
  }

 private:
  bool eof() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }
  void expect_char(char want, const char* forming, int line, int col) {
    if (eof() || peek() != want)
      throw ParseError("", line, col, std::string("malformed operator, expected ") + forming);
    advance();
  }
  void skip_blank_and_comments() {
    while (!eof()) {
      if (std::isspace(static_cast<unsigned char>(peek()))) {
        advance();
      } else if (peek() == '#') {
        while (!eof() && peek() != '\n') advance();
      } else {
        return;
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

// Recursive descent over:
//   formula := equiv
//   equiv   := impl ("<->" impl)*
//   impl    := or ("->" impl)?
//   or      := and ("|" and)*
//   and     := unary ("&" unary)*
//   unary   := "~" unary | "(" formula ")" | "true" | "false" | identifier
class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  Formula run() {
    Formula f = equiv();
    if (!at(Tok::End)) fail("expected end of input or a connective");
    return f;
  }

 private:
  Formula equiv() {
    Formula f = impl();
    while (accept(Tok::DArrow)) f = iff(std::move(f), impl());
    return f;
  }
  Formula impl() {
    Formula f = disj();
    if (accept(Tok::Arrow)) return implies(std::move(f), impl());
    return f;
  }
  Formula disj() {
    Formula f = conj();
    while (accept(Tok::Pipe)) f = std::move(f) | conj();
    return f;
  }
  Formula conj() {
    Formula f = unary();
    while (accept(Tok::Amp)) f = std::move(f) & unary();
    return f;
  }
  Formula unary() {
    if (accept(Tok::Tilde)) return ~unary();
    if (accept(Tok::LParen)) {
      Formula f = equiv();
      if (!accept(Tok::RParen)) fail("expected ')'");
      return f;
    }
    if (at(Tok::True)) {
      next();
      return Formula::constant(true);
    }
    if (at(Tok::False)) {
      next();
      return Formula::constant(false);
    }
    if (at(Tok::Ident)) {
      Token t = next();
      return Formula::atom(std::move(t.text));
    }
    fail("expected '~', '(', 'true', 'false' or identifier");
  }

  const Token& cur() const { return tokens_[pos_]; }
  bool at(Tok k) const { return cur().kind == k; }
  Token next() { return tokens_[pos_++]; }
  bool accept(Tok k) {
    if (!at(k)) return false;
    ++pos_;
    return true;
  }
  [[noreturn]] void fail(const std::string& expected) const {
    const Token& t = cur();
    throw ParseError("", t.line, t.column, expected + ", got " + token_name(t.kind));
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses a single formula. Throws ParseError with line/column on bad input.
inline Formula parse(std::string_view text) {
  detail::Lexer lexer(text);
  std::vector<detail::Token> tokens = lexer.run();
  if (tokens.front().kind == detail::Tok::End)
    throw ParseError("", tokens.front().line, tokens.front().column, "expected a formula, got end of input");
  return detail::Parser(std::move(tokens)).run();
}

}  // namespace bb
