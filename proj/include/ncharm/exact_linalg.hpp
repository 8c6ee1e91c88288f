#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "ncharm/scalar.hpp"

namespace ncharm {

using DenseMatrix = std::vector<std::vector<Scalar>>;

/// Gauss-Jordan elimination to reduced row echelon form over Q. The first
/// row (top to bottom) with a nonzero entry in a column becomes its pivot.
/// Returns the pivot columns; rows past the rank are zero afterwards.
inline std::vector<std::size_t> rref_in_place(DenseMatrix& m) {
  std::vector<std::size_t> pivots;
  if (m.empty()) return pivots;
  const std::size_t rows = m.size();
  const std::size_t cols = m.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t sel = r;
    while (sel < rows && m[sel][c] == 0) ++sel;
    if (sel == rows) continue;
    std::swap(m[r], m[sel]);
    const Scalar inv = 1 / m[r][c];
    for (std::size_t k = c; k < cols; ++k) m[r][k] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      const Scalar f = m[i][c];
      for (std::size_t k = c; k < cols; ++k) m[i][k] -= f * m[r][k];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline std::size_t rank(DenseMatrix m) { return rref_in_place(m).size(); }

/// Some x with A x = b, or nullopt if inconsistent. Free variables are 0.
inline std::optional<std::vector<Scalar>> solve(const DenseMatrix& a, const std::vector<Scalar>& b) {
  const std::size_t n = a.empty() ? 0 : a.front().size();
  DenseMatrix aug;
  aug.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    aug.push_back(a[i]);
    aug.back().push_back(b[i]);
  }
  const auto pivots = rref_in_place(aug);
  std::vector<Scalar> x(n, Scalar(0));
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    if (pivots[r] == n) return std::nullopt;
    x[pivots[r]] = aug[r][n];
  }
  return x;
}

/// Incremental Gauss-Jordan over Z on sparse rows.
///
/// Each stored row has a distinct pivot column and is zero in every other
/// pivot column. Row combinations are fraction-free (p*r - r[c]*R) and each
/// row is divided by the gcd of its entries, so numbers stay small. Built for
/// the very sparse Laplacian coefficient systems.
class RowReducer {
 public:
  using IntRow = std::vector<std::pair<std::size_t, mpz_class>>;

  explicit RowReducer(std::size_t cols) : cols_(cols) {}

  std::size_t cols() const { return cols_; }
  std::size_t rank() const { return rows_.size(); }

  /// Inserts a rational row (column -> value). Returns true if the rank grew.
  bool insert(const std::map<std::size_t, Scalar>& row) {
    mpz_class lcm = 1;
    for (const auto& [c, v] : row) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), v.get_den_mpz_t());
    IntRow r;
    r.reserve(row.size());
    for (const auto& [c, v] : row) {
      if (v == 0) continue;
      if (c >= cols_) throw Error("row entry beyond column count");
      r.emplace_back(c, mpz_class(v.get_num() * (lcm / v.get_den())));
    }
    return insert_int(std::move(r));
  }

  bool insert_int(IntRow r) {
    std::vector<std::size_t> hits;
    for (const auto& [c, v] : r)
      if (pivot_row_.count(c)) hits.push_back(c);
    for (std::size_t c : hits) {
      const mpz_class rc = entry(r, c);
      if (rc == 0) continue;
      const Stored& p = rows_[pivot_row_.at(c)];
      r = combine(r, p.pivot_value, p.row, -rc);
    }
    if (r.empty()) return false;
    normalize(r);
    const std::size_t pc = r.front().first;
    const mpz_class pv = r.front().second;
    for (Stored& s : rows_) {
      const mpz_class sc = entry(s.row, pc);
      if (sc == 0) continue;
      s.row = combine(s.row, pv, r, -sc);
      normalize(s.row);
      s.pivot_value = entry(s.row, s.pivot);
    }
    pivot_row_[pc] = rows_.size();
    rows_.push_back(Stored{pc, pv, std::move(r)});
    return true;
  }

  /// Basis of {v : A v = 0}: one vector per free column f, with v_f = 1.
  std::vector<std::vector<Scalar>> nullspace() const {
    std::vector<std::vector<Scalar>> out;
    for (std::size_t f = 0; f < cols_; ++f) {
      if (pivot_row_.count(f)) continue;
      std::vector<Scalar> v(cols_, Scalar(0));
      v[f] = 1;
      for (const Stored& s : rows_) {
        const mpz_class e = entry(s.row, f);
        if (e != 0) v[s.pivot] = make_scalar(mpz_class(-e), s.pivot_value);
      }
      out.push_back(std::move(v));
    }
    return out;
  }

 private:
  struct Stored {
    std::size_t pivot;
    mpz_class pivot_value;
    IntRow row;
  };

  static mpz_class entry(const IntRow& r, std::size_t c) {
    auto it = std::lower_bound(r.begin(), r.end(), c,
                               [](const auto& e, std::size_t col) { return e.first < col; });
    return (it != r.end() && it->first == c) ? it->second : mpz_class(0);
  }

  // a*x + b*y, merged by column.
  static IntRow combine(const IntRow& x, const mpz_class& a, const IntRow& y, const mpz_class& b) {
    IntRow out;
    out.reserve(x.size() + y.size());
    std::size_t i = 0, j = 0;
    while (i < x.size() || j < y.size()) {
      if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
        out.emplace_back(x[i].first, mpz_class(a * x[i].second));
        ++i;
      } else if (i == x.size() || y[j].first < x[i].first) {
        out.emplace_back(y[j].first, mpz_class(b * y[j].second));
        ++j;
      } else {
        mpz_class v = a * x[i].second + b * y[j].second;
        if (v != 0) out.emplace_back(x[i].first, std::move(v));
        ++i;
        ++j;
      }
    }
    return out;
  }

  // Divide by content; leading entry positive.
  static void normalize(IntRow& r) {
    if (r.empty()) return;
    mpz_class g = 0;
    for (const auto& [c, v] : r) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    if (r.front().second < 0) g = -g;
    if (g != 1)
      for (auto& [c, v] : r) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
  }

  std::size_t cols_;
  std::vector<Stored> rows_;
  std::map<std::size_t, std::size_t> pivot_row_;
};

/// Exact symmetric congruence diagonalization: A = sum_k d_k n_k n_k^T.
///
/// Repeatedly removes a rank-one piece: a nonzero diagonal A_ii (first in
/// index order) gives n = A e_i / A_ii; if every diagonal entry is zero but
/// A_ij != 0, the combined direction w = e_i + e_j (w^T A w = 2 A_ij) is used.
struct CongruenceTerm {
  Scalar d;
  std::vector<Scalar> n;
};

inline std::vector<CongruenceTerm> congruence_diagonalize(DenseMatrix a) {
  const std::size_t n = a.size();
  for (const auto& row : a)
    if (row.size() != n) throw Error("congruence diagonalization needs a square matrix");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (a[i][j] != a[j][i]) throw Error("congruence diagonalization needs a symmetric matrix");

  std::vector<CongruenceTerm> out;
  while (true) {
    std::vector<Scalar> w(n, Scalar(0));
    bool found = false;
    for (std::size_t i = 0; i < n && !found; ++i)
      if (a[i][i] != 0) {
        w[i] = 1;
        found = true;
      }
    for (std::size_t i = 0; i < n && !found; ++i)
      for (std::size_t j = i + 1; j < n && !found; ++j)
        if (a[i][j] != 0) {
          w[i] = 1;
          w[j] = 1;
          found = true;
        }
    if (!found) break;
    std::vector<Scalar> aw(n, Scalar(0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (w[j] != 0) aw[i] += a[i][j] * w[j];
    Scalar d = 0;
    for (std::size_t i = 0; i < n; ++i) d += w[i] * aw[i];
    std::vector<Scalar> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = aw[i] / d;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) a[i][j] -= d * v[i] * v[j];
    out.push_back(CongruenceTerm{d, std::move(v)});
  }
  return out;
}

}  // namespace ncharm
