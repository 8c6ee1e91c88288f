#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ncharm/error.hpp"
#include "ncharm/scalar.hpp"
#include "ncharm/word.hpp"

namespace ncharm {

/// Element of the free algebra over Q on x_1..x_g and the direction h.
///
/// Terms are kept in a map keyed by Word so iteration follows the canonical
/// graded-lex order. Zero coefficients are never stored.
class Poly {
 public:
  using Terms = std::map<Word, Scalar>;

  Poly() = default;
  explicit Poly(int num_vars) : g_(num_vars) {
    if (num_vars < 1 || num_vars > Letter::kMaxVars)
      throw Error("number of variables must be in 1.." + std::to_string(Letter::kMaxVars));
  }

  static Poly constant(int num_vars, const Scalar& c) {
    Poly p(num_vars);
    p.add_term(Word(), c);
    return p;
  }
  static Poly monomial(int num_vars, const Word& w, const Scalar& c = 1) {
    Poly p(num_vars);
    p.add_term(w, c);
    return p;
  }
  /// The single-letter polynomial x_i.
  static Poly var(int num_vars, int i) {
    return monomial(num_vars, Word{Letter::variable(i)});
  }
  static Poly direction(int num_vars) { return monomial(num_vars, Word{Letter::direction()}); }

  int num_vars() const { return g_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Scalar coefficient(const Word& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? Scalar(0) : it->second;
  }

  /// Accumulates c*w, purging the entry if it cancels.
  void add_term(const Word& w, const Scalar& c) {
    if (c == 0) return;
    if (w.max_variable() > g_)
      throw Error("word uses x" + std::to_string(w.max_variable()) + " but only " +
                  std::to_string(g_) + " variables are declared");
    auto [it, inserted] = terms_.try_emplace(w, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  bool contains_direction() const {
    for (const auto& [w, c] : terms_)
      if (w.count_direction() > 0) return true;
    return false;
  }

  /// Maximum word length; 0 for constants and for the zero polynomial.
  std::size_t total_degree() const {
    std::size_t d = 0;
    for (const auto& [w, c] : terms_) d = std::max(d, w.size());
    return d;
  }

  /// Degree if every word has the same length; nullopt for mixed or zero.
  std::optional<std::size_t> homogeneous_degree() const {
    if (terms_.empty()) return std::nullopt;
    const std::size_t d = terms_.begin()->first.size();
    for (const auto& [w, c] : terms_)
      if (w.size() != d) return std::nullopt;
    return d;
  }

  Poly transposed() const {
    Poly out(g_);
    for (const auto& [w, c] : terms_) out.terms_.emplace(w.transposed(), c);
    return out;
  }

  bool is_symmetric() const { return *this == transposed(); }

  Poly operator-() const {
    Poly out = *this;
    for (auto& [w, c] : out.terms_) c = -c;
    return out;
  }

  Poly& operator+=(const Poly& rhs) {
    check_compatible(rhs);
    for (const auto& [w, c] : rhs.terms_) add_term(w, c);
    return *this;
  }
  Poly& operator-=(const Poly& rhs) {
    check_compatible(rhs);
    for (const auto& [w, c] : rhs.terms_) add_term(w, Scalar(-c));
    return *this;
  }
  Poly& operator*=(const Scalar& s) {
    if (s == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [w, c] : terms_) c *= s;
    return *this;
  }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, const Scalar& s) { return a *= s; }
  friend Poly operator*(const Scalar& s, Poly a) { return a *= s; }

  friend Poly operator*(const Poly& a, const Poly& b) {
    a.check_compatible(b);
    Poly out(a.g_);
    for (const auto& [wa, ca] : a.terms_)
      for (const auto& [wb, cb] : b.terms_) out.add_term(wa * wb, Scalar(ca * cb));
    return out;
  }

  friend bool operator==(const Poly& a, const Poly& b) {
    return a.g_ == b.g_ && a.terms_ == b.terms_;
  }

  void check_compatible(const Poly& rhs) const {
    if (g_ != rhs.g_)
      throw Error("mismatched variable counts: " + std::to_string(g_) + " vs " +
                  std::to_string(rhs.g_));
  }

 private:
  int g_ = 1;
  Terms terms_;
};

inline Poly add(const Poly& p, const Poly& q) { return p + q; }
inline Poly scale(const Scalar& c, const Poly& p) { return c * p; }
inline Poly mul(const Poly& p, const Poly& q) { return p * q; }
inline Poly transpose(const Poly& p) { return p.transposed(); }

inline Poly power(const Poly& p, unsigned k) {
  Poly out = Poly::constant(p.num_vars(), 1);
  for (unsigned i = 0; i < k; ++i) out = out * p;
  return out;
}

struct DegreeProfile {
  std::size_t total_degree = 0;
  /// Number of h letters in each word, in canonical word order.
  std::vector<std::size_t> h_degree_per_word;
  std::optional<std::size_t> homogeneous_degree;
  bool is_symmetric = true;
};

inline DegreeProfile degree_profile(const Poly& p) {
  DegreeProfile prof;
  prof.total_degree = p.total_degree();
  for (const auto& [w, c] : p.terms()) prof.h_degree_per_word.push_back(w.count_direction());
  prof.homogeneous_degree = p.homogeneous_degree();
  prof.is_symmetric = p.is_symmetric();
  return prof;
}

}  // namespace ncharm
