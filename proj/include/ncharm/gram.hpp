#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ncharm/calculus.hpp"
#include "ncharm/exact_linalg.hpp"
#include "ncharm/harmonic.hpp"
#include "ncharm/neighbor.hpp"
#include "ncharm/parse.hpp"

namespace ncharm {

/// Raised when an exact argument shows a polynomial cannot be subharmonic
/// (a half-degree neighbor that is not harmonic, for instance).
class Obstruction : public Error {
 public:
  using Error::Error;
};

/// Harmonic basis used for half-degree factors.
///
/// Two variables: {x1^2 - x2^2, x1 x2, x2 x1} in degree 2, otherwise
/// {Re gamma^m, Im gamma^m}. Other variable counts use harmonic_basis.
inline std::vector<Poly> half_degree_basis(int g, int m) {
  if (m < 1) throw Error("half degree must be >= 1");
  if (g == 2) {
    if (m == 2)
      return {Poly::monomial(2, Word::of({1, 1})) - Poly::monomial(2, Word::of({2, 2})),
              Poly::monomial(2, Word::of({1, 2})), Poly::monomial(2, Word::of({2, 1}))};
    auto [re, im] = gamma_power_parts(m);
    return {re, im};
  }
  return harmonic_basis(g, m).elements;
}

/// p = basisvec^T Phi basisvec, i.e. sum_ab Phi_ab basisvec_a^T basisvec_b.
///
/// basisvec stacks the symmetric elements (s), the non-symmetric ones (u)
/// and their transposes (v). `phi` holds the coefficients of
/// p = sum_ij phi_ij gamma_i gamma_j over the original basis.
struct GramForm {
  int g = 0;
  int half_degree = 0;
  std::vector<Poly> basis;
  std::vector<Poly> basisvec;
  std::size_t num_s = 0;
  std::size_t num_u = 0;
  DenseMatrix phi;
  DenseMatrix raw;  // Psi
  DenseMatrix Phi;  // (Psi + Psi^T) / 2

  Poly reconstruct() const {
    Poly out(g);
    for (std::size_t a = 0; a < basisvec.size(); ++a)
      for (std::size_t b = 0; b < basisvec.size(); ++b)
        if (Phi[a][b] != 0) out += Phi[a][b] * (basisvec[a].transposed() * basisvec[b]);
    return out;
  }
};

inline GramForm gram_from_neighbors(const Poly& p) {
  if (p.contains_direction()) throw Error("gram form needs an h-free polynomial");
  if (!p.is_symmetric()) throw Error("gram form needs a symmetric polynomial");
  const auto deg = p.homogeneous_degree();
  if (!deg || *deg % 2 != 0 || *deg < 2) throw Error("gram form needs a homogeneous polynomial of even degree");
  const int g = p.num_vars();
  const int m = static_cast<int>(*deg / 2);

  GramForm out;
  out.g = g;
  out.half_degree = m;
  out.basis = half_degree_basis(g, m);
  if (!check_independence_property(out.basis))
    throw Error("half-degree basis lacks the independence property");
  const std::size_t k = out.basis.size();

  // p = sum_t x^t p_t with every p_t = sum_j mu_j(t) gamma_j.
  std::vector<Poly> outer(k, Poly(g));
  for (const auto& [t, pt] : right_neighbor(p, m).parts) {
    const auto mu = express_in_span(out.basis, pt);
    if (!mu) throw Obstruction("right neighbor of " + render(t) + " is not harmonic");
    for (std::size_t j = 0; j < k; ++j)
      if ((*mu)[j] != 0) outer[j].add_term(t, (*mu)[j]);
  }
  out.phi.assign(k, std::vector<Scalar>(k, Scalar(0)));
  for (std::size_t j = 0; j < k; ++j) {
    const auto coords = express_in_span(out.basis, outer[j]);
    if (!coords) throw Obstruction("left factor is not harmonic");
    for (std::size_t i = 0; i < k; ++i) out.phi[i][j] = (*coords)[i];
  }

  // Slots: s, then u, then v = u^T. left_slot[i] holds gamma_i^T.
  std::vector<std::size_t> sym, nonsym;
  for (std::size_t i = 0; i < k; ++i) (out.basis[i].is_symmetric() ? sym : nonsym).push_back(i);
  std::vector<std::size_t> right_slot(k), left_slot(k);
  std::vector<bool> used(k, false);
  std::vector<std::pair<std::size_t, std::optional<std::size_t>>> pairs;
  for (std::size_t i : nonsym) {
    if (used[i]) continue;
    used[i] = true;
    std::optional<std::size_t> partner;
    const Poly ti = out.basis[i].transposed();
    for (std::size_t j : nonsym)
      if (!used[j] && out.basis[j] == ti) {
        partner = j;
        used[j] = true;
        break;
      }
    pairs.emplace_back(i, partner);
  }
  out.num_s = sym.size();
  out.num_u = pairs.size();
  for (std::size_t q = 0; q < sym.size(); ++q) {
    out.basisvec.push_back(out.basis[sym[q]]);
    right_slot[sym[q]] = left_slot[sym[q]] = q;
  }
  const std::size_t u0 = out.num_s, v0 = out.num_s + out.num_u;
  for (std::size_t q = 0; q < pairs.size(); ++q) out.basisvec.push_back(out.basis[pairs[q].first]);
  for (std::size_t q = 0; q < pairs.size(); ++q) {
    const auto [i, partner] = pairs[q];
    out.basisvec.push_back(partner ? out.basis[*partner] : out.basis[i].transposed());
    right_slot[i] = u0 + q;
    left_slot[i] = v0 + q;
    if (partner) {
      right_slot[*partner] = v0 + q;
      left_slot[*partner] = u0 + q;
    }
  }

  const std::size_t n = out.basisvec.size();
  out.raw.assign(n, std::vector<Scalar>(n, Scalar(0)));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) out.raw[left_slot[i]][right_slot[j]] += out.phi[i][j];
  out.Phi.assign(n, std::vector<Scalar>(n, Scalar(0)));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) out.Phi[a][b] = (out.raw[a][b] + out.raw[b][a]) / 2;

  if (out.reconstruct() != p) throw Error("internal: gram form does not reproduce the polynomial");
  return out;
}

struct SosTerm {
  Scalar d;
  Poly R;
};

/// p = sum_i d_i R_i^T R_i with every R_i harmonic of half degree.
struct SosDecomposition {
  int g = 0;
  std::vector<SosTerm> terms;

  Poly reconstruct() const {
    Poly out(g);
    for (const SosTerm& t : terms) out += t.d * (t.R.transposed() * t.R);
    return out;
  }

  bool all_positive() const {
    for (const SosTerm& t : terms)
      if (t.d <= 0) return false;
    return true;
  }
};

/// Congruence-diagonalizes Phi = sum_k d_k n_k n_k^T and sets
/// R_k = sum_a n_k[a] basisvec_a. The d_k stay rational; their signs give
/// the inertia of Phi.
inline SosDecomposition sos_from_gram(const GramForm& gram) {
  SosDecomposition out;
  out.g = gram.g;
  for (const CongruenceTerm& ct : congruence_diagonalize(gram.Phi)) {
    Poly r(gram.g);
    for (std::size_t a = 0; a < ct.n.size(); ++a)
      if (ct.n[a] != 0) r += ct.n[a] * gram.basisvec[a];
    out.terms.push_back(SosTerm{ct.d, std::move(r)});
  }
  return out;
}

inline SosDecomposition sos_decompose(const Poly& p) {
  SosDecomposition out = sos_from_gram(gram_from_neighbors(p));
  if (out.reconstruct() != p) throw Error("internal: sum of squares does not reproduce the polynomial");
  for (const SosTerm& t : out.terms)
    if (!laplacian(t.R).is_zero()) throw Error("internal: square root term is not harmonic");
  return out;
}

/// Lap[sum d R^T R] == 2 sum d sum_j D[R, x_j]^T D[R, x_j], exactly.
inline bool laplacian_sos_identity_check(const SosDecomposition& dec) {
  const Poly lhs = laplacian(dec.reconstruct());
  Poly rhs(dec.g);
  for (const SosTerm& t : dec.terms)
    for (int j = 1; j <= dec.g; ++j) {
      const Poly dr = directional_derivative(t.R, j);
      rhs += Scalar(2 * t.d) * (dr.transposed() * dr);
    }
  return lhs == rhs;
}

}  // namespace ncharm
