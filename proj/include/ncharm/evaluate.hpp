#pragma once

#include <Eigen/Dense>

#include <optional>
#include <vector>

#include "ncharm/poly.hpp"

namespace ncharm {

using Matrix = Eigen::MatrixXd;

/// A tuple of real symmetric n x n matrices X_1..X_g and an optional H for h.
struct MatrixPoint {
  std::vector<Matrix> X;
  std::optional<Matrix> H;

  Eigen::Index size() const { return X.empty() ? (H ? H->rows() : 0) : X.front().rows(); }
};

/// Copies the upper triangle onto the lower one.
inline Matrix mirror_upper(Matrix m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < i; ++j) m(i, j) = m(j, i);
  return m;
}

namespace detail {

inline void check_point(const MatrixPoint& pt, int g, bool needs_h) {
  if (static_cast<int>(pt.X.size()) != g)
    throw Error("point supplies " + std::to_string(pt.X.size()) + " matrices, expected " +
                std::to_string(g));
  const Eigen::Index n = pt.size();
  for (const Matrix& m : pt.X)
    if (m.rows() != n || m.cols() != n) throw Error("matrix dimension mismatch in point");
  if (needs_h && !pt.H) throw Error("polynomial contains h but the point supplies no H");
  if (pt.H && (pt.H->rows() != n || pt.H->cols() != n))
    throw Error("H dimension does not match X");
}

}  // namespace detail

/// p(X)[H]: word-by-word matrix products; the empty word evaluates to I_n.
inline Matrix evaluate(const Poly& p, const MatrixPoint& pt) {
  detail::check_point(pt, p.num_vars(), p.contains_direction());
  const Eigen::Index n = pt.size();
  Matrix acc = Matrix::Zero(n, n);
  Matrix prod(n, n);
  for (const auto& [w, c] : p.terms()) {
    prod.setIdentity();
    for (Letter l : w) {
      const Matrix& f = l.is_direction() ? *pt.H : pt.X[static_cast<std::size_t>(l.index() - 1)];
      prod = prod * f;
    }
    acc += c.get_d() * prod;
  }
  return acc;
}

}  // namespace ncharm
