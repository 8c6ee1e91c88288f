#pragma once

#include <map>
#include <vector>

#include "ncharm/calculus.hpp"
#include "ncharm/poly.hpp"

namespace ncharm {

/// p = sum_t x^t p_t + remainder (Right) or p = sum_t p_t x^t + remainder
/// (Left), with |t| = m and deg(remainder) < m.
struct NeighborDecomposition {
  enum class Side { Right, Left };
  Side side = Side::Right;
  int m = 0;
  std::map<Word, Poly> parts;
  Poly remainder;

  Poly reconstruct() const {
    Poly out = remainder;
    for (const auto& [t, pt] : parts) {
      const Poly xt = Poly::monomial(remainder.num_vars(), t);
      out += side == Side::Right ? xt * pt : pt * xt;
    }
    return out;
  }
};

namespace detail {

inline NeighborDecomposition split_neighbors(const Poly& p, int m, NeighborDecomposition::Side side) {
  if (p.contains_direction()) throw Error("neighbor decomposition needs an h-free polynomial");
  if (m <= 0 || static_cast<std::size_t>(m) >= p.total_degree())
    throw Error("split length " + std::to_string(m) + " must satisfy 0 < m < " +
                std::to_string(p.total_degree()));
  const auto um = static_cast<std::size_t>(m);
  NeighborDecomposition out;
  out.side = side;
  out.m = m;
  out.remainder = Poly(p.num_vars());
  for (const auto& [w, c] : p.terms()) {
    if (w.size() < um) {
      out.remainder.add_term(w, c);
      continue;
    }
    const bool right = side == NeighborDecomposition::Side::Right;
    const Word t = right ? w.subword(0, um) : w.subword(w.size() - um, um);
    const Word rest = right ? w.subword(um, w.size() - um) : w.subword(0, w.size() - um);
    out.parts.try_emplace(t, Poly(p.num_vars())).first->second.add_term(rest, c);
  }
  return out;
}

}  // namespace detail

inline NeighborDecomposition right_neighbor(const Poly& p, int m) {
  return detail::split_neighbors(p, m, NeighborDecomposition::Side::Right);
}

inline NeighborDecomposition left_neighbor(const Poly& p, int m) {
  return detail::split_neighbors(p, m, NeighborDecomposition::Side::Left);
}

struct NeighborCheck {
  bool harmonic = true;
  std::vector<Word> failing;
};

/// Whether every right neighbor at split length m has zero Laplacian.
inline NeighborCheck neighbor_harmonicity_check(const Poly& p, int m) {
  if (!p.is_zero() && !p.homogeneous_degree()) throw Error("neighbor check needs a homogeneous polynomial");
  NeighborCheck out;
  if (p.is_zero()) return out;
  for (const auto& [t, pt] : right_neighbor(p, m).parts)
    if (!laplacian(pt).is_zero()) {
      out.harmonic = false;
      out.failing.push_back(t);
    }
  return out;
}

}  // namespace ncharm
