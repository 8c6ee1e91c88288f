#pragma once

#include <map>
#include <vector>

#include "ncharm/poly.hpp"

namespace ncharm {

namespace detail {

inline void require_h_free(const Poly& p, const char* op) {
  if (p.contains_direction())
    throw Error(std::string(op) + " is only defined for polynomials without h");
}

inline void require_var_index(const Poly& p, int i) {
  if (i < 1 || i > p.num_vars())
    throw Error("variable index " + std::to_string(i) + " out of range 1.." +
                std::to_string(p.num_vars()));
}

}  // namespace detail

/// D[p, x_i, h]: each occurrence of x_i replaced by h, one at a time.
inline Poly directional_derivative(const Poly& p, int i) {
  detail::require_var_index(p, i);
  detail::require_h_free(p, "directional derivative");
  const Letter xi = Letter::variable(i);
  Poly out(p.num_vars());
  for (const auto& [w, c] : p.terms()) {
    std::vector<Letter> letters = w.letters();
    for (std::size_t k = 0; k < letters.size(); ++k) {
      if (letters[k] != xi) continue;
      letters[k] = Letter::direction();
      out.add_term(Word(letters), c);
      letters[k] = xi;
    }
  }
  return out;
}

/// Lap[p, h] = sum_i D[D[p, x_i, h], x_i, h].
///
/// Enumerated directly: for every ordered pair of distinct occurrences of
/// x_i in a word, both are replaced by h. Ordered pairs produce the factor 2
/// of d^2/dt^2.
inline Poly laplacian(const Poly& p) {
  detail::require_h_free(p, "laplacian");
  Poly out(p.num_vars());
  for (const auto& [w, c] : p.terms()) {
    std::vector<Letter> letters = w.letters();
    const std::size_t n = letters.size();
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) {
        if (letters[a] != letters[b]) continue;
        const Letter x = letters[a];
        letters[a] = letters[b] = Letter::direction();
        out.add_term(Word(letters), Scalar(2 * c));
        letters[a] = letters[b] = x;
      }
    }
  }
  return out;
}

/// Polynomial in commuting x_1..x_g, h. Exponent vectors have length g + 1,
/// with the h exponent last.
class CommPoly {
 public:
  using Exponents = std::vector<int>;

  CommPoly() = default;
  explicit CommPoly(int num_vars) : g_(num_vars) {}

  int num_vars() const { return g_; }
  const std::map<Exponents, Scalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const Exponents& e, const Scalar& c) {
    if (c == 0) return;
    if (static_cast<int>(e.size()) != g_ + 1) throw Error("exponent vector has wrong length");
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  /// Multiplies by h^k.
  CommPoly times_h_power(int k) const {
    CommPoly out(g_);
    for (const auto& [e, c] : terms_) {
      Exponents f = e;
      f.back() += k;
      out.terms_.emplace(std::move(f), c);
    }
    return out;
  }

  friend bool operator==(const CommPoly&, const CommPoly&) = default;

 private:
  int g_ = 1;
  std::map<Exponents, Scalar> terms_;
};

/// Letting all letters commute: words map to their letter counts.
inline CommPoly commutative_collapse(const Poly& p) {
  const int g = p.num_vars();
  CommPoly out(g);
  for (const auto& [w, c] : p.terms()) {
    CommPoly::Exponents e(static_cast<std::size_t>(g + 1), 0);
    for (Letter l : w) ++e[l.is_direction() ? static_cast<std::size_t>(g) : static_cast<std::size_t>(l.index() - 1)];
    out.add_term(e, c);
  }
  return out;
}

/// Standard Laplacian sum_i d^2/dx_i^2 of an h-free commutative polynomial.
inline CommPoly commutative_laplacian(const CommPoly& cp) {
  const int g = cp.num_vars();
  CommPoly out(g);
  for (const auto& [e, c] : cp.terms()) {
    if (e.back() != 0) throw Error("commutative laplacian requires an h-free polynomial");
    for (int i = 0; i < g; ++i) {
      const int k = e[static_cast<std::size_t>(i)];
      if (k < 2) continue;
      CommPoly::Exponents f = e;
      f[static_cast<std::size_t>(i)] -= 2;
      out.add_term(f, Scalar(c * k * (k - 1)));
    }
  }
  return out;
}

}  // namespace ncharm
