#include "lexer.hpp"

#include <cctype>

namespace ws::detail {

namespace {

bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '\'';
}

}  // namespace

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n && i < src.size(); ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    int tl = line, tc = col;
    if (src.substr(i, 3) == "_|_") {
      out.push_back({Tok::kBottom, "_|_", tl, tc});
      advance(3);
      continue;
    }
    if (c == '"') {
      std::string text;
      advance(1);
      for (;;) {
        if (i >= src.size()) throw ParseError(tl, tc, "unterminated string");
        char d = src[i];
        if (d == '"') break;
        if (d == '\\' && i + 1 < src.size()) {
          advance(1);
          d = src[i];
        }
        text.push_back(d);
        advance(1);
      }
      advance(1);
      out.push_back({Tok::kString, std::move(text), tl, tc});
      continue;
    }
    if (c == '?') {
      std::size_t j = i + 1;
      while (j < src.size() && ident_char(src[j]) && src[j] != '.') ++j;
      if (j == i + 1) throw ParseError(tl, tc, "expected a variable name after '?'");
      out.push_back({Tok::kVar, std::string(src.substr(i + 1, j - i - 1)), tl, tc});
      advance(j - i);
      continue;
    }
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      bool digits = true;
      while (j < src.size() && ident_char(src[j])) {
        if (!std::isdigit(static_cast<unsigned char>(src[j]))) digits = false;
        ++j;
      }
      out.push_back({digits ? Tok::kNumber : Tok::kIdent, std::string(src.substr(i, j - i)), tl, tc});
      advance(j - i);
      continue;
    }
    for (std::string_view p : {"!=", "->"}) {
      if (src.substr(i, 2) == p) {
        out.push_back({Tok::kPunct, std::string(p), tl, tc});
        advance(2);
        goto next_token;
      }
    }
    if (std::string_view("(){}[],:;&|!=*+-").find(c) != std::string_view::npos) {
      out.push_back({Tok::kPunct, std::string(1, c), tl, tc});
      advance(1);
      continue;
    }
    throw ParseError(tl, tc, std::string("unexpected character '") + c + "'");
  next_token:;
  }
  out.push_back({Tok::kEnd, "", line, col});
  return out;
}

std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::kEnd:
      return "end of input";
    case Tok::kString:
      return "string \"" + t.text + "\"";
    case Tok::kVar:
      return "variable ?" + t.text;
    default:
      return "'" + t.text + "'";
  }
}

const Token& TokenStream::expect(std::string_view p) {
  if (!is_punct(p)) fail("expected '" + std::string(p) + "' but found " + describe(peek()));
  return next();
}

const Token& TokenStream::expect_word(std::string_view w) {
  if (!is_word(w)) fail("expected '" + std::string(w) + "' but found " + describe(peek()));
  return next();
}

std::string TokenStream::expect_ident(std::string_view what) {
  if (peek().kind != Tok::kIdent) fail("expected " + std::string(what) + " but found " + describe(peek()));
  return next().text;
}

}  // namespace ws::detail
