#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "ncharm/gram.hpp"
#include "ncharm/harmonic.hpp"
#include "ncharm/middle_matrix.hpp"
#include "ncharm/parse.hpp"
#include "ncharm/positivity.hpp"

namespace ncharm {

// ---------------------------------------------------------------------------
// Degree four

/// Coordinates of a symmetric homogeneous quartic in x1, x2. A[0..9] are the
/// coefficients of x1^4, x1^3x2, x1^2x2x1, x1^2x2^2, x1x2x1x2, x1x2^2x1,
/// x1x2^3, x2x1^2x2, x2x1x2^2, x2^4 (each shared with its transpose).
using QuarticCoeffs = std::array<Scalar, 10>;

inline const std::array<Word, 10>& quartic_words() {
  static const std::array<Word, 10> words = {
      Word::of({1, 1, 1, 1}), Word::of({1, 1, 1, 2}), Word::of({1, 1, 2, 1}), Word::of({1, 1, 2, 2}),
      Word::of({1, 2, 1, 2}), Word::of({1, 2, 2, 1}), Word::of({1, 2, 2, 2}), Word::of({2, 1, 1, 2}),
      Word::of({2, 1, 2, 2}), Word::of({2, 2, 2, 2})};
  return words;
}

/// sum_k A_k (w_k + w_k^T), counting palindromic words once.
inline Poly quartic_from_coeffs(const QuarticCoeffs& a) {
  Poly p(2);
  const auto& words = quartic_words();
  for (std::size_t k = 0; k < 10; ++k) {
    p.add_term(words[k], a[k]);
    if (words[k].transposed() != words[k]) p.add_term(words[k].transposed(), a[k]);
  }
  return p;
}

inline QuarticCoeffs quartic_coeffs(const Poly& p) {
  if (p.num_vars() != 2 || !p.is_symmetric() || (!p.is_zero() && p.homogeneous_degree() != 4u))
    throw Error("expected a symmetric homogeneous quartic in two variables");
  QuarticCoeffs a;
  for (std::size_t k = 0; k < 10; ++k) a[k] = p.coefficient(quartic_words()[k]);
  return a;
}

/// The six free parameters of subharmonic-candidate quartics.
struct Degree4Coeffs {
  std::array<Scalar, 6> B;

  Scalar G() const { return B[0] + B[4]; }
  Scalar Hh() const { return B[0] + B[5]; }
  Scalar Jj() const { return B[1] - B[2]; }
  Scalar K() const { return B[0] + B[3]; }

  /// As quartic coordinates: A4 = -A1, A7 = -A3, A9 = -A2, A10 = A1.
  QuarticCoeffs quartic() const {
    return {B[0], B[1], B[2], Scalar(-B[0]), B[3], B[4], Scalar(-B[2]), B[5], Scalar(-B[1]), B[0]};
  }
  Poly polynomial() const { return quartic_from_coeffs(quartic()); }
};

/// B if the quartic satisfies the relations forced by the zero diagonal of
/// its Laplacian's middle matrix; nullopt otherwise.
inline std::optional<Degree4Coeffs> degree4_family_coeffs(const Poly& p) {
  const QuarticCoeffs a = quartic_coeffs(p);
  if (a[3] != -a[0] || a[9] != a[0] || a[8] != -a[1] || a[6] != -a[2]) return std::nullopt;
  return Degree4Coeffs{{a[0], a[1], a[2], a[4], a[5], a[7]}};
}

struct Degree4Result {
  enum class Region { StrictlyInside, Boundary, Violated };
  Region region = Region::Violated;
  Scalar G, Hh, Jj, K;
  /// Hh*G - Jj^2 - K^2
  Scalar margin;
};

inline Degree4Result degree4_inequalities(const Degree4Coeffs& b) {
  Degree4Result r;
  r.G = b.G();
  r.Hh = b.Hh();
  r.Jj = b.Jj();
  r.K = b.K();
  r.margin = r.Hh * r.G - r.Jj * r.Jj - r.K * r.K;
  if (r.margin > 0 && r.Hh > 0)
    r.region = Degree4Result::Region::StrictlyInside;
  else if (r.margin == 0 && r.Hh >= 0 && r.G >= 0)
    r.region = Degree4Result::Region::Boundary;
  else
    r.region = Degree4Result::Region::Violated;
  return r;
}

// ---------------------------------------------------------------------------
// Even degree > 4

struct Membership {
  Scalar c0, c1, c2;
};

/// (Re gamma^d)^2, Re gamma^{2d}, Im gamma^{2d}; checked independent.
inline std::array<Poly, 3> high_even_generators(int d) {
  auto [re, im] = gamma_power_parts(d);
  auto [re2, im2] = gamma_power_parts(2 * d);
  std::array<Poly, 3> gens{re * re, re2, im2};
  if (poly_rank({gens[0], gens[1], gens[2]}) != 3)
    throw Error("internal: degree " + std::to_string(2 * d) + " generators are dependent");
  return gens;
}

/// (c0, c1, c2) with p = c0 (Re gamma^d)^2 + c1 Re gamma^{2d} + c2 Im gamma^{2d}.
inline std::optional<Membership> high_even_membership(const Poly& p) {
  if (p.num_vars() != 2) throw Error("membership test needs two variables");
  const auto deg = p.homogeneous_degree();
  if (!deg || *deg % 2 != 0 || *deg <= 4)
    throw Error("membership test needs a homogeneous polynomial of even degree > 4");
  const auto gens = high_even_generators(static_cast<int>(*deg / 2));
  const auto c = express_in_span({gens[0], gens[1], gens[2]}, p);
  if (!c) return std::nullopt;
  return Membership{(*c)[0], (*c)[1], (*c)[2]};
}

// ---------------------------------------------------------------------------
// Witness search

namespace detail {

/// For odd-degree p, Lap[p](-X)[H] = -Lap[p](X)[H], so any point where the
/// Laplacian is nonzero yields a negative eigenvalue at X or at -X.
inline std::optional<Witness> odd_degree_witness(const Poly& lap, const SampleConfig& cfg) {
  const int g = lap.num_vars();
  for (int n : cfg.sizes)
    for (int s = 0; s < cfg.samples_per_size; ++s) {
      detail::Draw d = detail::draw_point(cfg, kDomainOddWitness, g, true, n, s);
      for (double sign : {1.0, -1.0}) {
        std::vector<Matrix> X;
        for (const Matrix& m : d.X) X.push_back(sign * m);
        const Matrix v = evaluate(lap, MatrixPoint{X, d.H});
        const double eig = min_eigenvalue((v + v.transpose()) / 2.0);
        if (eig < -cfg.tol) return Witness{n, std::move(X), d.H, eig, s};
      }
    }
  const SampleVerdict sv = sample_matrix_positive(lap, cfg);
  return sv.witness;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Classification in two variables

struct Verdict {
  enum class Kind {
    Harmonic,
    PurelySubharmonicCertified,
    SubharmonicBoundaryCertified,
    NotSubharmonic,
    Unknown
  };
  Kind kind = Kind::Unknown;
  std::string reason;
  /// Point where Lap[p] has a negative eigenvalue.
  std::optional<Witness> witness;
  /// Degree 2: Lap[p] = 2 (A1 + A2) h^2; this stores A1 + A2.
  std::optional<Scalar> degree2_trace;
  std::optional<Degree4Result> inequality;
  std::optional<std::pair<std::size_t, std::size_t>> zeroes_pair;
  std::optional<Membership> membership;
  std::optional<SosDecomposition> sos;
};

inline const char* to_string(Verdict::Kind k) {
  switch (k) {
    case Verdict::Kind::Harmonic: return "Harmonic";
    case Verdict::Kind::PurelySubharmonicCertified: return "PurelySubharmonicCertified";
    case Verdict::Kind::SubharmonicBoundaryCertified: return "SubharmonicBoundaryCertified";
    case Verdict::Kind::NotSubharmonic: return "NotSubharmonic";
    case Verdict::Kind::Unknown: return "Unknown";
  }
  return "Unknown";
}

inline Verdict classify(const Poly& p, const SampleConfig& cfg = {}) {
  cfg.validate();
  if (p.num_vars() != 2) throw Error("classification is only available for two variables");
  if (p.contains_direction()) throw Error("classification needs an h-free polynomial");
  Verdict v;
  if (p.is_zero()) {
    v.kind = Verdict::Kind::Harmonic;
    v.reason = "zero polynomial";
    return v;
  }
  const auto deg = p.homogeneous_degree();
  if (!deg) throw Error("classification needs a homogeneous polynomial");
  const std::size_t d = *deg;
  if (d > 2 && !p.is_symmetric()) throw Error("classification needs a symmetric polynomial above degree 2");

  const Poly lap = laplacian(p);
  auto sampled_witness = [&]() -> std::optional<Witness> {
    if (!lap.is_symmetric()) return std::nullopt;
    return sample_matrix_positive(lap, cfg).witness;
  };

  if (lap.is_zero()) {
    v.kind = Verdict::Kind::Harmonic;
    v.reason = "Laplacian is identically zero";
    return v;
  }

  if (d % 2 == 1) {
    v.kind = Verdict::Kind::NotSubharmonic;
    v.reason = "odd degree with nonzero Laplacian";
    v.witness = detail::odd_degree_witness(lap, cfg);
    return v;
  }

  if (d == 2) {
    const Scalar trace = p.coefficient(Word::of({1, 1})) + p.coefficient(Word::of({2, 2}));
    v.degree2_trace = trace;
    if (trace > 0) {
      v.kind = Verdict::Kind::PurelySubharmonicCertified;
      v.reason = "Lap = 2(A1+A2) h^2 with A1+A2 > 0";
    } else {
      v.kind = Verdict::Kind::NotSubharmonic;
      v.reason = "Lap = 2(A1+A2) h^2 with A1+A2 < 0";
      const double eig = 2.0 * trace.get_d();
      v.witness = Witness{1, {Matrix::Zero(1, 1), Matrix::Zero(1, 1)}, Matrix::Ones(1, 1), eig, 0};
    }
    return v;
  }

  if (d == 4) {
    const auto family = degree4_family_coeffs(p);
    if (!family) {
      v.kind = Verdict::Kind::NotSubharmonic;
      v.zeroes_pair = zeroes_violation(extract(lap));
      v.reason = "middle matrix of the Laplacian has a zero diagonal entry with a nonzero off-diagonal";
      v.witness = sampled_witness();
      return v;
    }
    v.inequality = degree4_inequalities(*family);
    switch (v.inequality->region) {
      case Degree4Result::Region::StrictlyInside:
        v.kind = Verdict::Kind::PurelySubharmonicCertified;
        v.reason = "Hh*G > Jj^2 + K^2 and Hh > 0";
        return v;
      case Degree4Result::Region::Violated:
        v.kind = Verdict::Kind::NotSubharmonic;
        v.reason = "degree-4 inequalities violated";
        v.witness = sampled_witness();
        return v;
      case Degree4Result::Region::Boundary:
        break;
    }
    try {
      SosDecomposition dec = sos_decompose(p);
      if (dec.all_positive()) {
        v.kind = Verdict::Kind::SubharmonicBoundaryCertified;
        v.reason = "boundary of the degree-4 cone; Gram matrix over harmonics is PSD";
        v.sos = std::move(dec);
        return v;
      }
    } catch (const Obstruction&) {
    }
    v.witness = sampled_witness();
    v.kind = v.witness ? Verdict::Kind::NotSubharmonic : Verdict::Kind::Unknown;
    v.reason = v.witness ? "boundary case refuted by sampling" : "boundary case without certificate";
    return v;
  }

  const auto member = high_even_membership(p);
  if (!member) {
    v.kind = Verdict::Kind::NotSubharmonic;
    v.reason = "not a combination of (Re g^d)^2, Re g^2d, Im g^2d";
    v.witness = sampled_witness();
    return v;
  }
  v.membership = member;
  if (member->c0 > 0) {
    v.kind = Verdict::Kind::PurelySubharmonicCertified;
    v.reason = "c0 > 0";
  } else if (member->c0 == 0) {
    v.kind = Verdict::Kind::Harmonic;
    v.reason = "c0 = 0";
  } else {
    v.kind = Verdict::Kind::NotSubharmonic;
    v.reason = "c0 < 0";
    v.witness = sampled_witness();
  }
  return v;
}

// ---------------------------------------------------------------------------
// Odd-degree sandwich

/// p = sum_{m,i,j} phi[m][i][j] gamma_m x_i gamma_j over a half-degree
/// harmonic basis gamma of degree (d - 1) / 2.
struct SandwichDecomposition {
  int g = 0;
  int degree = 0;
  std::vector<Poly> basis;
  std::vector<std::vector<std::vector<Scalar>>> phi;  // [m][i-1][j]

  Poly reconstruct() const {
    Poly out(g);
    for (std::size_t m = 0; m < basis.size(); ++m)
      for (int i = 1; i <= g; ++i)
        for (std::size_t j = 0; j < basis.size(); ++j) {
          const Scalar& c = phi[m][static_cast<std::size_t>(i - 1)][j];
          if (c != 0) out += c * (basis[m] * Poly::var(g, i) * basis[j]);
        }
    return out;
  }
};

inline SandwichDecomposition odd_sandwich(const Poly& p, int degree) {
  if (p.contains_direction()) throw Error("sandwich decomposition needs an h-free polynomial");
  if (degree < 3 || degree % 2 == 0) throw Error("sandwich decomposition needs odd degree >= 3");
  if (!p.is_zero() && p.homogeneous_degree() != static_cast<std::size_t>(degree))
    throw Error("polynomial is not homogeneous of degree " + std::to_string(degree));
  if (!laplacian(p).is_zero()) throw Error("sandwich decomposition needs a harmonic polynomial");
  const int g = p.num_vars();
  const std::size_t m = static_cast<std::size_t>((degree - 1) / 2);

  SandwichDecomposition out;
  out.g = g;
  out.degree = degree;
  out.basis = half_degree_basis(g, static_cast<int>(m));
  if (!check_independence_property(out.basis))
    throw Error("half-degree basis lacks the independence property");
  const std::size_t k = out.basis.size();
  out.phi.assign(k, std::vector<std::vector<Scalar>>(static_cast<std::size_t>(g), std::vector<Scalar>(k, Scalar(0))));

  // Right neighbors of x^t x_i, |t| = m.
  std::map<std::pair<Word, int>, Poly> parts;
  for (const auto& [w, c] : p.terms()) {
    auto key = std::make_pair(w.subword(0, m), w[m].index());
    parts.try_emplace(key, Poly(g)).first->second.add_term(w.subword(m + 1, w.size() - m - 1), c);
  }
  // outer[j][i] = sum_t mu_j(t, i) x^t
  std::vector<std::vector<Poly>> outer(k, std::vector<Poly>(static_cast<std::size_t>(g), Poly(g)));
  for (const auto& [key, part] : parts) {
    const auto mu = express_in_span(out.basis, part);
    if (!mu) throw Error("sandwich decomposition infeasible: right neighbor of " + render(key.first) + "*x" +
                         std::to_string(key.second) + " is not in the harmonic span");
    for (std::size_t j = 0; j < k; ++j)
      if ((*mu)[j] != 0) outer[j][static_cast<std::size_t>(key.second - 1)].add_term(key.first, (*mu)[j]);
  }
  for (std::size_t j = 0; j < k; ++j)
    for (int i = 1; i <= g; ++i) {
      const auto coords = express_in_span(out.basis, outer[j][static_cast<std::size_t>(i - 1)]);
      if (!coords) throw Error("sandwich decomposition infeasible: left factor is not in the harmonic span");
      for (std::size_t mm = 0; mm < k; ++mm) out.phi[mm][static_cast<std::size_t>(i - 1)][j] = (*coords)[mm];
    }
  if (out.reconstruct() != p) throw Error("internal: sandwich decomposition does not reproduce the polynomial");
  return out;
}

inline SandwichDecomposition odd_sandwich(const Poly& p) {
  const auto deg = p.homogeneous_degree();
  if (!deg) throw Error("sandwich decomposition needs a nonzero homogeneous polynomial or an explicit degree");
  return odd_sandwich(p, static_cast<int>(*deg));
}

/// The three groups of Lap[sum phi gamma_m x_i gamma_j] separated by where
/// the h letters sit; all three vanish for harmonic input.
inline std::array<Poly, 3> sandwich_vanishing_terms(const SandwichDecomposition& s) {
  const int g = s.g;
  const std::size_t k = s.basis.size();
  const Poly h = Poly::direction(g);
  std::array<Poly, 3> out{Poly(g), Poly(g), Poly(g)};
  for (int i = 1; i <= g; ++i) {
    const std::size_t ii = static_cast<std::size_t>(i - 1);
    for (std::size_t m = 0; m < k; ++m) {
      Poly inner(g);
      for (std::size_t j = 0; j < k; ++j) inner += s.phi[m][ii][j] * s.basis[j];
      out[0] += s.basis[m] * h * directional_derivative(inner, i);
    }
    for (std::size_t j = 0; j < k; ++j) {
      Poly inner(g);
      for (std::size_t m = 0; m < k; ++m) inner += s.phi[m][ii][j] * s.basis[m];
      out[1] += directional_derivative(inner, i) * h * s.basis[j];
      for (int l = 1; l <= g; ++l)
        out[2] += directional_derivative(inner, l) * Poly::var(g, i) * directional_derivative(s.basis[j], l);
    }
  }
  return out;
}

}  // namespace ncharm
