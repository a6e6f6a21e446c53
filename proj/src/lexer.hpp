#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "worldset/error.hpp"

namespace ws::detail {

enum class Tok {
  kIdent,   // letters, digits, '_', '.', '\'' ; not all digits
  kNumber,  // digits only
  kString,  // "..." (text unescaped)
  kVar,     // ?name (text is name)
  kBottom,  // _|_
  kPunct,   // ( ) { } [ ] , : ; & | ! = != -> * + -
  kEnd,
};

struct Token {
  Tok kind;
  std::string text;
  int line;
  int col;
};

std::vector<Token> tokenize(std::string_view src);

// Cursor over a token stream with error helpers.
class TokenStream {
 public:
  explicit TokenStream(std::vector<Token> toks) : toks_(std::move(toks)) {}

  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = pos_ + ahead;
    return i < toks_.size() ? toks_[i] : toks_.back();
  }
  const Token& next() {
    const Token& t = peek();
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }
  bool at_end() const { return peek().kind == Tok::kEnd; }
  bool is_punct(std::string_view p, std::size_t ahead = 0) const {
    return peek(ahead).kind == Tok::kPunct && peek(ahead).text == p;
  }
  bool is_word(std::string_view w, std::size_t ahead = 0) const {
    return peek(ahead).kind == Tok::kIdent && peek(ahead).text == w;
  }
  bool accept(std::string_view p) {
    if (!is_punct(p)) return false;
    next();
    return true;
  }
  const Token& expect(std::string_view p);
  const Token& expect_word(std::string_view w);
  std::string expect_ident(std::string_view what);

  [[noreturn]] void fail(const std::string& msg) const { fail_at(peek(), msg); }
  [[noreturn]] static void fail_at(const Token& t, const std::string& msg) {
    throw ParseError(t.line, t.col, msg);
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

std::string describe(const Token& t);

}  // namespace ws::detail
