#pragma once

// Text syntax for O_N elements.
//
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := factor (factor | '/' factor)*
//   factor := atom ('*' | '^*')?
//   atom   := 'I' | 's'digits | number['i'] | 'i' | 'pi'
//           | 'sqrt' '(' expr ')' | 'exp' '(' expr ')' | '(' expr ')'
//
// Juxtaposition is the product; a postfix '*' is the adjoint. Divisors and
// the arguments of sqrt/exp must be scalars (multiples of I).

#include <cctype>
#include <charconv>
#include <cstdio>
#include <string>
#include <string_view>

#include "gpcuntz/algebra.hpp"

namespace gpcuntz {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t offset)
      : std::runtime_error(msg + " at byte " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

namespace detail {

class ExprParser {
 public:
  ExprParser(std::string_view text, int rank) : text_(text), rank_(rank) {}

  AlgebraElement parse_all() {
    AlgebraElement e = parse_expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  std::string_view text_;
  int rank_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }
  [[noreturn]] void fail_at(const std::string& msg, std::size_t at) const { throw ParseError(msg, at); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  bool eat(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }

  static bool starts_atom(char c) {
    return c == '(' || c == '.' || std::isdigit(static_cast<unsigned char>(c)) || std::isalpha(static_cast<unsigned char>(c));
  }

  AlgebraElement parse_expr() {
    bool negate = false;
    if (eat('-')) {
      negate = true;
    } else {
      eat('+');
    }
    AlgebraElement acc = parse_term();
    if (negate) acc = Complex{-1.0} * acc;
    while (true) {
      const char c = peek();
      if (c != '+' && c != '-') break;
      ++pos_;
      AlgebraElement t = parse_term();
      acc = c == '+' ? acc + t : acc - t;
    }
    return acc;
  }

  AlgebraElement parse_term() {
    if (!starts_atom(peek())) fail("expected a term");
    AlgebraElement acc = parse_factor();
    while (true) {
      const char c = peek();
      if (c == '/') {
        const std::size_t at = ++pos_;
        const AlgebraElement d = parse_factor();
        const Complex v = require_scalar(d, "divisor", at);
        if (v == Complex{}) fail_at("division by zero", at);
        acc = (1.0 / v) * acc;
      } else if (starts_atom(c)) {
        acc = multiply(acc, parse_factor());
      } else {
        break;
      }
    }
    return acc;
  }

  AlgebraElement parse_factor() {
    AlgebraElement a = parse_atom();
    while (true) {
      if (peek() == '*') {
        ++pos_;
        a = adjoint(a);
      } else if (peek() == '^') {
        ++pos_;
        if (pos_ >= text_.size() || text_[pos_] != '*') fail("expected '*' after '^'");
        ++pos_;
        a = adjoint(a);
      } else {
        break;
      }
    }
    return a;
  }

  Complex require_scalar(const AlgebraElement& a, const char* what, std::size_t at) const {
    if (!a.is_scalar()) fail_at(std::string(what) + " must be a scalar", at);
    return a.scalar_value();
  }

  AlgebraElement scalar(Complex c) const { return AlgebraElement::scalar(rank_, c); }

  AlgebraElement parse_atom() {
    const char c = peek();
    const std::size_t start = pos_;
    if (c == '(') {
      ++pos_;
      AlgebraElement e = parse_expr();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (!std::isalpha(static_cast<unsigned char>(c))) fail("expected an atom");

    // generator: 's' followed directly by digits
    if (c == 's' && pos_ + 1 < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
      ++pos_;
      int idx = 0;
      const auto [ptr, ec] = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), idx);
      if (ec != std::errc{}) fail("bad generator subscript");
      pos_ = static_cast<std::size_t>(ptr - text_.data());
      if (idx < 1 || idx > rank_) {
        fail_at("generator subscript " + std::to_string(idx) + " outside 1.." + std::to_string(rank_), start);
      }
      return AlgebraElement::generator(rank_, idx);
    }

    std::size_t end = pos_;
    while (end < text_.size() && std::isalpha(static_cast<unsigned char>(text_[end]))) ++end;
    const std::string_view ident = text_.substr(pos_, end - pos_);
    pos_ = end;
    if (ident == "I") return AlgebraElement::identity(rank_);
    if (ident == "i") return scalar(Complex{0.0, 1.0});
    if (ident == "pi") return scalar(std::numbers::pi);
    if (ident == "sqrt" || ident == "exp") {
      expect('(');
      const std::size_t at = pos_;
      const Complex v = require_scalar(parse_expr(), "function argument", at);
      expect(')');
      return scalar(ident == "sqrt" ? std::sqrt(v) : std::exp(v));
    }
    fail_at("unknown identifier '" + std::string(ident) + "'", start);
  }

  AlgebraElement parse_number() {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), v);
    if (ec != std::errc{}) fail("malformed number");
    pos_ = static_cast<std::size_t>(ptr - text_.data());
    // imaginary suffix: 'i' not followed by another letter
    if (pos_ < text_.size() && text_[pos_] == 'i' &&
        (pos_ + 1 >= text_.size() || !std::isalpha(static_cast<unsigned char>(text_[pos_ + 1])))) {
      ++pos_;
      return scalar(Complex{0.0, v});
    }
    return scalar(v);
  }
};

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string format_word(const NormalWord& w) {
  std::string out;
  auto append = [&out](const std::string& piece) {
    if (!out.empty()) out += ' ';
    out += piece;
  };
  for (int j : w.left) append("s" + std::to_string(j));
  if (w.right.size() == 1) {
    append("s" + std::to_string(w.right[0]) + "*");
  } else if (!w.right.empty()) {
    std::string inner;
    for (int k : w.right) {
      if (!inner.empty()) inner += ' ';
      inner += "s" + std::to_string(k);
    }
    append("(" + inner + ")*");
  }
  return out;
}

}  // namespace detail

inline AlgebraElement parse(std::string_view text, int rank) {
  if (rank < 2) throw DomainError("parse: N must be at least 2");
  return detail::ExprParser(text, rank).parse_all();
}

/// Canonical text form: terms in (|J|, J, |K|, K) order, coefficients printed
/// with 17 significant digits so that parse(format(a)) reproduces a exactly.
inline std::string format(const AlgebraElement& a) {
  if (a.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [w, c] : a.terms()) {
    bool negative = false;
    std::string coef;
    if (c.imag() == 0.0) {
      negative = c.real() < 0.0;
      const double mag = std::abs(c.real());
      if (mag != 1.0 || w.is_identity()) coef = detail::format_double(mag);
    } else if (c.real() == 0.0) {
      negative = c.imag() < 0.0;
      coef = detail::format_double(std::abs(c.imag())) + "i";
    } else {
      coef = "(" + detail::format_double(c.real()) + (c.imag() < 0.0 ? "-" : "+") +
             detail::format_double(std::abs(c.imag())) + "i)";
    }
    std::string body;
    if (w.is_identity()) {
      body = coef == "1" ? "I" : coef;
    } else {
      body = coef.empty() ? detail::format_word(w) : coef + " " + detail::format_word(w);
    }
    if (first) {
      out = negative ? "-" + body : body;
    } else {
      out += negative ? " - " : " + ";
      out += body;
    }
    first = false;
  }
  return out;
}

}  // namespace gpcuntz
