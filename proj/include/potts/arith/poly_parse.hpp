#pragma once

#include <cctype>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

#include "potts/arith/mpoly.hpp"

namespace potts {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Recursive-descent reader for polynomial expressions:
//   expr   := ['-'|'+'] term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*      '/' only by nonzero rationals
//   factor := atom ('^' integer)?
//   atom   := integer | name | '(' expr ')' | '-' factor
// Names resolve to ring symbols first, then to caller-supplied definitions.
template <class Vars>
class PolyParser {
 public:
  using P = MPoly<Vars>;

  explicit PolyParser(std::map<std::string, P, std::less<>> definitions = {})
      : defs_(std::move(definitions)) {}

  void define(const std::string& name, P value) { defs_[name] = std::move(value); }
  const std::map<std::string, P, std::less<>>& definitions() const { return defs_; }

  P parse(std::string_view text) {
    text_ = text;
    pos_ = 0;
    P r = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg + " at offset " + std::to_string(pos_));
  }
  void skip_ws() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (c == '\\' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '\n') {
        pos_ += 2;
      } else {
        break;
      }
    }
  }
  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  P expr() {
    skip_ws();
    P r;
    bool neg = false;
    if (accept('-')) {
      neg = true;
    } else {
      accept('+');
    }
    r = term();
    if (neg) r = -r;
    for (;;) {
      if (accept('+')) {
        r += term();
      } else if (accept('-')) {
        r -= term();
      } else {
        break;
      }
    }
    return r;
  }

  P term() {
    P r = factor();
    for (;;) {
      if (accept('*')) {
        r *= factor();
      } else if (accept('/')) {
        P d = factor();
        if (!d.is_constant() || d.is_zero()) fail("division only by nonzero constants");
        r = r.scaled(1 / d.constant_term());
      } else {
        break;
      }
    }
    return r;
  }

  P factor() {
    P base = atom();
    if (accept('^')) {
      skip_ws();
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      base = base.pow(static_cast<unsigned>(std::stoul(std::string(text_.substr(start, pos_ - start)))));
    }
    return base;
  }

  P atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      P r = expr();
      if (!accept(')')) fail("expected ')'");
      return r;
    }
    if (c == '-') {
      ++pos_;
      return -factor();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return P(Rational(Integer(std::string(text_.substr(start, pos_ - start)))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                                     text_[pos_] == '_'))
        ++pos_;
      std::string_view name = text_.substr(start, pos_ - start);
      for (std::size_t v = 0; v < Vars::kCount; ++v)
        if (Vars::kNames[v] == name) return P::variable(v);
      auto it = defs_.find(name);
      if (it != defs_.end()) return it->second;
      fail("unknown symbol '" + std::string(name) + "'");
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  std::map<std::string, P, std::less<>> defs_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

// Standard aliases: beta = b, nu = b + 1.
template <class Vars>
PolyParser<Vars> make_potts_parser() {
  using P = MPoly<Vars>;
  PolyParser<Vars> parser;
  std::size_t b = Vars::kCount;
  for (std::size_t v = 0; v < Vars::kCount; ++v)
    if (Vars::kNames[v] == "b") b = v;
  if (b != Vars::kCount) {
    parser.define("beta", P::variable(b));
    parser.define("nu", P::variable(b) + P(1));
  }
  return parser;
}

inline Poly parse_poly(std::string_view text) { return make_potts_parser<PottsVars>().parse(text); }

}  // namespace potts
