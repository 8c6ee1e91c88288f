#pragma once

#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "ncharm/evaluate.hpp"
#include "ncharm/poly.hpp"

namespace ncharm {

/// q(x)[h] = sum_ij (h m_i)^T Z_ij (h m_j).
///
/// `border` holds the x-words m_i (entry i of the border vector is h*m_i),
/// distinct and in canonical order. `Z` is N x N with x-only entries.
struct MiddleMatrixRep {
  int g = 0;
  std::vector<Word> border;
  std::vector<std::vector<Poly>> Z;
};

/// Splits every word at its two h letters: L h M h R contributes M to
/// Z(L^T, R). Requires q symmetric with exactly two h letters per word.
inline MiddleMatrixRep extract(const Poly& q) {
  if (!q.is_symmetric()) throw Error("middle matrix needs a symmetric polynomial");
  const int g = q.num_vars();

  struct Piece {
    Word left, mid, right;
    Scalar c;
  };
  std::vector<Piece> pieces;
  std::set<Word> border_set;
  for (const auto& [w, c] : q.terms()) {
    std::vector<std::size_t> hs;
    for (std::size_t k = 0; k < w.size(); ++k)
      if (w[k].is_direction()) hs.push_back(k);
    if (hs.size() != 2)
      throw Error("middle matrix needs exactly two h letters per word; word " +
                  std::to_string(pieces.size()) + " has " + std::to_string(hs.size()));
    Piece p{w.subword(0, hs[0]).transposed(), w.subword(hs[0] + 1, hs[1] - hs[0] - 1),
            w.subword(hs[1] + 1, w.size() - hs[1] - 1), c};
    border_set.insert(p.left);
    border_set.insert(p.right);
    pieces.push_back(std::move(p));
  }

  MiddleMatrixRep rep;
  rep.g = g;
  rep.border.assign(border_set.begin(), border_set.end());
  std::map<Word, std::size_t> pos;
  for (std::size_t i = 0; i < rep.border.size(); ++i) pos.emplace(rep.border[i], i);
  rep.Z.assign(rep.border.size(), std::vector<Poly>(rep.border.size(), Poly(g)));
  for (const Piece& p : pieces) rep.Z[pos.at(p.left)][pos.at(p.right)].add_term(p.mid, p.c);
  return rep;
}

inline Poly reconstruct(const MiddleMatrixRep& rep) {
  Poly out(rep.g);
  const Poly h = Poly::direction(rep.g);
  for (std::size_t i = 0; i < rep.border.size(); ++i)
    for (std::size_t j = 0; j < rep.border.size(); ++j) {
      if (rep.Z[i][j].is_zero()) continue;
      const Poly left = Poly::monomial(rep.g, rep.border[i].transposed());
      const Poly right = Poly::monomial(rep.g, rep.border[j]);
      out += left * h * rep.Z[i][j] * h * right;
    }
  return out;
}

/// First (i, j) in row-major order with Z_ii = 0 and Z_ij != 0. Such a pair
/// rules out matrix positivity.
inline std::optional<std::pair<std::size_t, std::size_t>> zeroes_violation(const MiddleMatrixRep& rep) {
  for (std::size_t i = 0; i < rep.border.size(); ++i) {
    if (!rep.Z[i][i].is_zero()) continue;
    for (std::size_t j = 0; j < rep.border.size(); ++j)
      if (j != i && !rep.Z[i][j].is_zero()) return std::make_pair(i, j);
  }
  return std::nullopt;
}

/// Block matrix [Z_ij(X)], symmetrized as (M + M^T) / 2.
inline Matrix evaluate_middle(const MiddleMatrixRep& rep, const std::vector<Matrix>& X) {
  if (static_cast<int>(X.size()) != rep.g) throw Error("point has the wrong number of matrices");
  if (X.empty()) throw Error("empty point");
  const Eigen::Index n = X.front().rows();
  if (n < 1) throw Error("matrix size must be at least 1");
  const Eigen::Index N = static_cast<Eigen::Index>(rep.border.size());
  Matrix M = Matrix::Zero(N * n, N * n);
  const MatrixPoint pt{X, std::nullopt};
  detail::check_point(pt, rep.g, false);
  for (Eigen::Index i = 0; i < N; ++i)
    for (Eigen::Index j = 0; j < N; ++j) {
      const Poly& z = rep.Z[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      if (!z.is_zero()) M.block(i * n, j * n, n, n) = evaluate(z, pt);
    }
  return (M + M.transpose()) / 2.0;
}

}  // namespace ncharm
