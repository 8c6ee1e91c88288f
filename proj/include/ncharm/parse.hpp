#pragma once

#include <cctype>
#include <string>
#include <string_view>

#include "ncharm/poly.hpp"

namespace ncharm {

namespace detail {

// Recursive-descent parser for
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := (coeff | var | '(' expr ')' | 'T(' expr ')') ('^' nat)?
//   var    := 'x' nat | 'h'
//   coeff  := int ('/' nat)?
// which accepts the documented grammar plus a leading sign and powers of
// parenthesized factors, both of which canonical renderings can produce.
class Parser {
 public:
  Parser(std::string_view text, int num_vars) : text_(text), g_(num_vars) {}

  Poly parse() {
    Poly p = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  bool accept(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  std::string digits() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  unsigned long nat(const char* what) {
    skip_ws();
    const std::size_t start = pos_;
    std::string d = digits();
    if (d.empty()) fail(std::string("expected ") + what);
    if (d.size() > 6) {
      pos_ = start;
      fail(std::string(what) + " too large");
    }
    return std::stoul(d);
  }

  Poly expr() {
    bool negate = false;
    if (accept('-'))
      negate = true;
    else
      accept('+');
    Poly acc = term();
    if (negate) acc = -acc;
    while (true) {
      if (accept('+'))
        acc += term();
      else if (accept('-'))
        acc -= term();
      else
        break;
    }
    return acc;
  }

  Poly term() {
    Poly acc = factor();
    while (accept('*')) acc = acc * factor();
    return acc;
  }

  Poly factor() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    Poly base(g_);
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mpz_class num(digits());
      mpz_class den = 1;
      if (accept('/')) {
        skip_ws();
        const std::size_t at = pos_;
        std::string d = digits();
        if (d.empty()) fail("expected denominator");
        den = mpz_class(d);
        if (den == 0) {
          pos_ = at;
          fail("zero denominator");
        }
      }
      base = Poly::constant(g_, make_scalar(num, den));
    } else if (c == 'x') {
      const std::size_t at = pos_++;
      const std::string d = digits();
      if (d.empty()) fail("expected variable index after 'x'");
      const unsigned long idx = d.size() > 6 ? 0 : std::stoul(d);
      if (idx < 1 || idx > static_cast<unsigned long>(g_)) {
        pos_ = at;
        fail("variable index x" + d + " out of range 1.." + std::to_string(g_));
      }
      base = Poly::var(g_, static_cast<int>(idx));
    } else if (c == 'h') {
      ++pos_;
      base = Poly::direction(g_);
    } else if (c == 'T' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '(') {
      pos_ += 2;
      base = expr().transposed();
      expect(')');
    } else if (c == '(') {
      ++pos_;
      base = expr();
      expect(')');
    } else {
      fail("unexpected character '" + std::string(1, c) + "'");
    }
    if (accept('^')) base = power(base, static_cast<unsigned>(nat("exponent")));
    return base;
  }

  std::string_view text_;
  int g_;
  std::size_t pos_ = 0;
};

inline std::string render_letter(Letter l) {
  return l.is_direction() ? std::string("h") : "x" + std::to_string(l.index());
}

}  // namespace detail

inline Poly parse(std::string_view text, int num_vars) {
  return detail::Parser(text, num_vars).parse();
}

/// Word as '*'-joined letters with runs collapsed to powers; "1" if empty.
inline std::string render(const Word& w) {
  if (w.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < w.size();) {
    std::size_t j = i;
    while (j < w.size() && w[j] == w[i]) ++j;
    if (!out.empty()) out += '*';
    out += detail::render_letter(w[i]);
    if (j - i > 1) out += "^" + std::to_string(j - i);
    i = j;
  }
  return out;
}

/// Canonical text: terms in graded-lex order, unit coefficients elided.
inline std::string render(const Poly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [w, c] : p.terms()) {
    const bool negative = c < 0;
    if (first)
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    first = false;
    const Scalar mag = abs(c);
    std::string m = mag.get_num().get_str();
    if (mag.get_den() != 1) m += "/" + mag.get_den().get_str();
    if (w.empty())
      out += m;
    else if (mag == 1)
      out += render(w);
    else
      out += m + "*" + render(w);
  }
  return out;
}

}  // namespace ncharm
