#pragma once

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "poly.hpp"

namespace lnt {

struct ParseError : std::runtime_error {
  std::size_t pos;
  ParseError(std::size_t at, const std::string& what)
      : std::runtime_error("parse error at position " + std::to_string(at) + ": " + what),
        pos(at) {}
};

// Grammar, with explicit '*' for products (juxtaposition is rejected):
//   expr   := term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := '-' factor | atom
//   atom   := variable | integer | integer '/' integer   (Q only)
//           | '(' expr ')' | '[' expr (',' expr)+ ']'
// Brackets are left-normed commutators.
template <class R>
class PolyParser {
 public:
  PolyParser(const R& ring, std::string_view text) : ring_(ring), s_(text) {}

  Poly<R> parse() {
    Poly<R> p = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return p;
  }

 private:
  const R& ring_;
  std::string_view s_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(pos_, msg); }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  bool eat(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Poly<R> expr() {
    Poly<R> acc = term();
    for (;;) {
      char c = peek();
      if (c == '+') {
        ++pos_;
        acc += term();
      } else if (c == '-') {
        ++pos_;
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  Poly<R> term() {
    Poly<R> acc = factor();
    for (;;) {
      char c = peek();
      if (c == '*') {
        ++pos_;
        acc = acc * factor();
      } else if (c == 'x' || std::isdigit(static_cast<unsigned char>(c)) || c == '(' || c == '[') {
        fail("missing '*' between factors");
      } else {
        return acc;
      }
    }
  }

  Poly<R> factor() {
    if (eat('-')) return -factor();
    return atom();
  }

  BigInt integer() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ == start) fail("expected a number");
    return BigInt(std::string(s_.substr(start, pos_ - start)));
  }

  Poly<R> atom() {
    char c = peek();
    if (c == 'x') {
      ++pos_;
      if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
        fail("variable needs an index, like x1");
      BigInt idx = integer();
      if (idx < 1 || idx > 1000000) fail("variable index out of range");
      return Poly<R>::var(ring_, idx.template convert_to<Var>());
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      BigInt num = integer();
      if (peek() == '/') {
        if constexpr (R::tag == RingTag::RAT) {
          ++pos_;
          BigInt den = integer();
          if (den == 0) fail("division by zero");
          Poly<R> p(ring_);
          p.add_term(Word::one(), ring_.from_fraction(num, den));
          return p;
        } else {
          fail("rational literal requires ring Q");
        }
      }
      return Poly<R>::constant(ring_, ring_.from_bigint(num));
    }
    if (c == '(') {
      ++pos_;
      Poly<R> p = expr();
      if (!eat(')')) fail("expected ')'");
      return p;
    }
    if (c == '[') {
      ++pos_;
      std::vector<Poly<R>> args;
      args.push_back(expr());
      while (eat(',')) args.push_back(expr());
      if (!eat(']')) fail("expected ',' or ']'");
      if (args.size() < 2) fail("commutator needs at least two arguments");
      return left_normed(args);
    }
    if (c == '\0') fail("unexpected end of input");
    fail(std::string("unexpected character '") + c + "'");
  }
};

template <class R>
Poly<R> parse_poly(const R& ring, std::string_view text) {
  return PolyParser<R>(ring, text).parse();
}

}  // namespace lnt
