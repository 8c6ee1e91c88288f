#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "ncharm/calculus.hpp"
#include "ncharm/exact_linalg.hpp"
#include "ncharm/poly.hpp"

namespace ncharm {

/// (Re gamma^d, Im gamma^d) for gamma = x1 + i x2, via
///   Re_d = x1 Re_{d-1} - x2 Im_{d-1},  Im_d = x1 Im_{d-1} + x2 Re_{d-1}.
inline std::pair<Poly, Poly> gamma_power_parts(int d) {
  if (d < 1) throw Error("gamma power needs degree >= 1");
  const Poly x1 = Poly::var(2, 1);
  const Poly x2 = Poly::var(2, 2);
  Poly re = x1;
  Poly im = x2;
  for (int k = 2; k <= d; ++k) {
    Poly next_re = x1 * re - x2 * im;
    Poly next_im = x1 * im + x2 * re;
    re = std::move(next_re);
    im = std::move(next_im);
  }
  return {re, im};
}

/// Linear map p -> Lap[p] restricted to degree-d h-free words.
struct LaplacianMatrix {
  int g = 0;
  int d = 0;
  std::vector<Word> row_words;  // degree-d words with exactly two h letters
  std::vector<Word> col_words;  // the g^d words in x
  std::vector<std::map<std::size_t, Scalar>> rows;

  Scalar entry(std::size_t r, std::size_t c) const {
    auto it = rows[r].find(c);
    return it == rows[r].end() ? Scalar(0) : it->second;
  }
};

inline LaplacianMatrix laplacian_coefficient_matrix(int g, int d) {
  if (g < 1 || d < 1) throw Error("laplacian matrix needs g >= 1 and d >= 1");
  LaplacianMatrix m;
  m.g = g;
  m.d = d;
  m.col_words = enumerate_words(g, d);
  if (d >= 2) {
    for (const Word& base : enumerate_words(g, d - 2))
      for (int a = 0; a < d; ++a)
        for (int b = a + 1; b < d; ++b) {
          std::vector<Letter> letters;
          letters.reserve(static_cast<std::size_t>(d));
          std::size_t k = 0;
          for (int pos = 0; pos < d; ++pos)
            letters.push_back(pos == a || pos == b ? Letter::direction() : base[k++]);
          m.row_words.emplace_back(std::move(letters));
        }
    std::sort(m.row_words.begin(), m.row_words.end());
  }
  std::map<Word, std::size_t> row_of;
  for (std::size_t r = 0; r < m.row_words.size(); ++r) row_of.emplace(m.row_words[r], r);
  m.rows.resize(m.row_words.size());
  for (std::size_t c = 0; c < m.col_words.size(); ++c) {
    const Poly lap = laplacian(Poly::monomial(g, m.col_words[c]));
    for (const auto& [w, v] : lap.terms()) m.rows[row_of.at(w)][c] = v;
  }
  return m;
}

/// Exact basis of the homogeneous degree-d harmonics in g variables.
struct HarmonicBasis {
  int g = 0;
  int d = 0;
  std::vector<Poly> elements;
  std::vector<Word> word_index;

  std::size_t dimension() const { return elements.size(); }
};

namespace detail {

inline Poly poly_from_coords(int g, const std::vector<Word>& words, const std::vector<Scalar>& v) {
  Poly p(g);
  for (std::size_t i = 0; i < v.size(); ++i) p.add_term(words[i], v[i]);
  return p;
}

}  // namespace detail

/// Nullspace of the Laplacian coefficient matrix, in reduced row echelon
/// form over the canonical word order.
inline HarmonicBasis harmonic_basis(int g, int d) {
  const LaplacianMatrix m = laplacian_coefficient_matrix(g, d);
  RowReducer reducer(m.col_words.size());
  for (const auto& row : m.rows) reducer.insert(row);
  DenseMatrix null = reducer.nullspace();
  const std::size_t dim = rref_in_place(null).size();
  null.resize(dim);

  HarmonicBasis basis;
  basis.g = g;
  basis.d = d;
  basis.word_index = m.col_words;
  for (const auto& v : null) basis.elements.push_back(detail::poly_from_coords(g, m.col_words, v));
  return basis;
}

/// Coefficients c with sum_j c_j generators[j] = target, if the target lies
/// in their span. Generators are assumed linearly independent.
inline std::optional<std::vector<Scalar>> express_in_span(const std::vector<Poly>& generators,
                                                          const Poly& target) {
  std::map<Word, std::size_t> index;
  for (const Poly& p : generators)
    for (const auto& [w, c] : p.terms()) index.try_emplace(w, 0);
  for (const auto& [w, c] : target.terms())
    if (!index.count(w)) return std::nullopt;
  std::size_t i = 0;
  for (auto& [w, pos] : index) pos = i++;
  DenseMatrix a(index.size(), std::vector<Scalar>(generators.size(), Scalar(0)));
  std::vector<Scalar> b(index.size(), Scalar(0));
  for (std::size_t j = 0; j < generators.size(); ++j)
    for (const auto& [w, c] : generators[j].terms()) a[index.at(w)][j] = c;
  for (const auto& [w, c] : target.terms()) b[index.at(w)] = c;
  return solve(a, b);
}

inline std::optional<std::vector<Scalar>> express_in_basis(const Poly& p, const HarmonicBasis& basis) {
  if (p.num_vars() != basis.g) throw Error("variable count does not match basis");
  if (!p.is_zero() && p.homogeneous_degree() != static_cast<std::size_t>(basis.d))
    throw Error("polynomial is not homogeneous of the basis degree " + std::to_string(basis.d));
  return express_in_span(basis.elements, p);
}

/// For each element, the first word (canonical order) that occurs in it and
/// in no other element; nullopt if some element has no such word.
inline std::optional<std::vector<Word>> check_independence_property(const std::vector<Poly>& elements) {
  std::vector<Word> out;
  for (std::size_t j = 0; j < elements.size(); ++j) {
    std::optional<Word> found;
    for (const auto& [w, c] : elements[j].terms()) {
      bool unique = true;
      for (std::size_t k = 0; k < elements.size() && unique; ++k)
        if (k != j && elements[k].coefficient(w) != 0) unique = false;
      if (unique) {
        found = w;
        break;
      }
    }
    if (!found) return std::nullopt;
    out.push_back(*found);
  }
  return out;
}

inline std::optional<std::vector<Word>> check_independence_property(const HarmonicBasis& basis) {
  return check_independence_property(basis.elements);
}

/// Rank of the coefficient vectors of the given polynomials.
inline std::size_t poly_rank(const std::vector<Poly>& polys) {
  std::map<Word, std::size_t> index;
  for (const Poly& p : polys)
    for (const auto& [w, c] : p.terms()) index.try_emplace(w, 0);
  std::size_t i = 0;
  for (auto& [w, pos] : index) pos = i++;
  DenseMatrix m(polys.size(), std::vector<Scalar>(index.size(), Scalar(0)));
  for (std::size_t r = 0; r < polys.size(); ++r)
    for (const auto& [w, c] : polys[r].terms()) m[r][index.at(w)] = c;
  return rank(std::move(m));
}

}  // namespace ncharm
