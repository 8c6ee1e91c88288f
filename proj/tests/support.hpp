#pragma once

// Seeded generators and independent reference computations for tests.

#include <Eigen/LU>

#include <random>
#include <vector>

#include "ncharm/ncharm.hpp"

namespace ncharm::testing {

using Rng = std::mt19937_64;

inline int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

/// n/d with |n| <= range, 1 <= d <= max_den.
inline Scalar random_scalar(Rng& rng, int range = 5, int max_den = 3) {
  return make_scalar(uniform_int(rng, -range, range), uniform_int(rng, 1, max_den));
}

inline Scalar random_nonzero_scalar(Rng& rng, int range = 5, int max_den = 3) {
  Scalar s;
  do s = random_scalar(rng, range, max_den);
  while (s == 0);
  return s;
}

inline Word random_word(Rng& rng, int g, int len) {
  std::vector<Letter> letters;
  for (int k = 0; k < len; ++k) letters.push_back(Letter::variable(uniform_int(rng, 1, g)));
  return Word(std::move(letters));
}

inline Poly random_poly(Rng& rng, int g, int max_deg, int nterms) {
  Poly p(g);
  for (int k = 0; k < nterms; ++k) p.add_term(random_word(rng, g, uniform_int(rng, 0, max_deg)), random_scalar(rng));
  return p;
}

inline Poly random_homogeneous(Rng& rng, int g, int d, int nterms) {
  Poly p(g);
  for (int k = 0; k < nterms; ++k) p.add_term(random_word(rng, g, d), random_nonzero_scalar(rng));
  return p;
}

inline Poly symmetrize(const Poly& p) { return p + p.transposed(); }

/// Symmetric, every word of the form L h M h R with x-words L, M, R.
inline Poly random_two_h_symmetric(Rng& rng, int g, int max_part, int nterms) {
  Poly q(g);
  const Word h{Letter::direction()};
  for (int k = 0; k < nterms; ++k) {
    const Word w = random_word(rng, g, uniform_int(rng, 0, max_part)) * h *
                   random_word(rng, g, uniform_int(rng, 0, max_part)) * h *
                   random_word(rng, g, uniform_int(rng, 0, max_part));
    q.add_term(w, random_nonzero_scalar(rng));
  }
  return symmetrize(q);
}

/// Coefficients of t^0, t^1, t^2 in p(..., x_i + t h, ...), by multiplying
/// the substituted letters out.
inline std::vector<Poly> t_expansion(const Poly& p, int i) {
  const int g = p.num_vars();
  std::vector<Poly> total(3, Poly(g));
  for (const auto& [w, c] : p.terms()) {
    std::vector<Poly> acc{Poly::constant(g, c), Poly(g), Poly(g)};
    for (Letter l : w) {
      const Poly x = Poly::monomial(g, Word{l});
      std::vector<Poly> next(3, Poly(g));
      for (int k = 0; k < 3; ++k) next[static_cast<std::size_t>(k)] += acc[static_cast<std::size_t>(k)] * x;
      if (l == Letter::variable(i))
        for (int k = 0; k < 2; ++k)
          next[static_cast<std::size_t>(k + 1)] += acc[static_cast<std::size_t>(k)] * Poly::direction(g);
      acc = std::move(next);
    }
    for (std::size_t k = 0; k < 3; ++k) total[k] += acc[k];
  }
  return total;
}

inline Poly derivative_oracle(const Poly& p, int i) { return t_expansion(p, i)[1]; }

/// sum_i d^2/dt^2 p(..., x_i + t h, ...) at t = 0.
inline Poly laplacian_oracle(const Poly& p) {
  Poly out(p.num_vars());
  for (int i = 1; i <= p.num_vars(); ++i) out += Scalar(2) * t_expansion(p, i)[2];
  return out;
}

/// Harmonic dimension via floating-point rank of the Laplacian on all degree-d words.
inline int numeric_harmonic_dimension(int g, int d) {
  const std::vector<Word> cols = enumerate_words(g, d);
  std::vector<Poly> laps;
  std::map<Word, Eigen::Index> rows;
  for (const Word& w : cols) {
    laps.push_back(laplacian_oracle(Poly::monomial(g, w)));
    for (const auto& [r, c] : laps.back().terms()) rows.try_emplace(r, static_cast<Eigen::Index>(rows.size()));
  }
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (const auto& [r, v] : laps[c].terms()) m(rows.at(r), static_cast<Eigen::Index>(c)) = v.get_d();
  if (m.rows() == 0) return static_cast<int>(cols.size());
  Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
  return static_cast<int>(cols.size()) - static_cast<int>(lu.rank());
}

inline Matrix random_sym_matrix(Rng& rng, int n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) m(i, j) = m(j, i) = u(rng);
  return m;
}

inline MatrixPoint random_point(Rng& rng, int g, int n, bool with_h) {
  MatrixPoint pt;
  for (int k = 0; k < g; ++k) pt.X.push_back(random_sym_matrix(rng, n));
  if (with_h) pt.H = random_sym_matrix(rng, n);
  return pt;
}

}  // namespace ncharm::testing
