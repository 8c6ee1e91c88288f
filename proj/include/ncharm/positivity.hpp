#pragma once

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <thread>
#include <vector>

#include "ncharm/calculus.hpp"
#include "ncharm/evaluate.hpp"
#include "ncharm/middle_matrix.hpp"

namespace ncharm {

struct SampleConfig {
  std::uint64_t seed = 0;
  std::vector<int> sizes{1, 2, 3, 4};
  int samples_per_size = 200;
  int h_samples = 50;
  double tol = 1e-9;
  double entry_range = 1.0;

  void validate() const {
    if (sizes.empty()) throw Error("sample sizes must be nonempty");
    for (int n : sizes)
      if (n < 1) throw Error("sample sizes must be >= 1");
    if (samples_per_size < 0 || h_samples < 0) throw Error("sample counts must be nonnegative");
    if (!(tol > 0)) throw Error("tolerance must be positive");
    if (!(entry_range > 0)) throw Error("entry range must be positive");
  }
};

/// Matrices at which an evaluated polynomial has min_eig < -tol.
struct Witness {
  int n = 0;
  std::vector<Matrix> X;
  std::optional<Matrix> H;
  double min_eig = 0;
  int sample_index = 0;
};

struct SampleVerdict {
  enum class Kind { NoCounterexampleFound, Counterexample };
  Kind kind = Kind::NoCounterexampleFound;
  std::optional<Witness> witness;
  std::size_t samples_tested = 0;
  double min_eig_seen = std::numeric_limits<double>::infinity();
};

// ---------------------------------------------------------------------------
// Deterministic random streams

/// splitmix64 stream. Every sample draws from its own stream keyed by
/// (seed, domain, size, sample index, matrix slot), so results do not depend
/// on evaluation order or thread count.
class SubStream {
 public:
  SubStream(std::uint64_t seed, std::uint64_t domain, std::uint64_t n, std::uint64_t sample,
            std::uint64_t slot) {
    state_ = seed;
    for (std::uint64_t k : {domain, n, sample, slot}) state_ = mix(state_ ^ mix(k + 0x632BE59BD9B4E019ULL));
  }

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix(state_);
  }

  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) {
    const double u = static_cast<double>(next() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
};

enum StreamDomain : std::uint64_t {
  kDomainSample = 1,
  kDomainPointH = 2,
  kDomainOddWitness = 3,
};

/// Symmetric n x n matrix with upper-triangle entries uniform in [-range, range).
inline Matrix random_symmetric(SubStream& s, int n, double range) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) m(i, j) = s.uniform(-range, range);
  return mirror_upper(std::move(m));
}

// ---------------------------------------------------------------------------
// Dense symmetric tests

namespace detail {

inline void require_symmetric(const Matrix& m) {
  if (m.rows() != m.cols()) throw Error("matrix is not square");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) throw Error("matrix is not symmetric");
}

}  // namespace detail

struct LdlResult {
  std::vector<double> pivots;
  bool psd = true;
};

/// Symmetric LDL^T with diagonal pivoting (largest remaining |diagonal|
/// first). PSD iff every pivot >= -tol and, once the remaining diagonal is
/// below tol, the remaining block is zero within tol.
inline LdlResult ldl_pivots(const Matrix& m, double tol) {
  detail::require_symmetric(m);
  Matrix a = m;
  const Eigen::Index n = a.rows();
  std::vector<Eigen::Index> remaining(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) remaining[static_cast<std::size_t>(i)] = i;

  LdlResult out;
  while (!remaining.empty()) {
    auto best = std::max_element(remaining.begin(), remaining.end(), [&](Eigen::Index x, Eigen::Index y) {
      return std::abs(a(x, x)) < std::abs(a(y, y));
    });
    const Eigen::Index k = *best;
    const double piv = a(k, k);
    if (std::abs(piv) <= tol) {
      for (Eigen::Index i : remaining) {
        out.pivots.push_back(a(i, i));
        for (Eigen::Index j : remaining)
          if (std::abs(a(i, j)) > tol) out.psd = false;
      }
      break;
    }
    out.pivots.push_back(piv);
    if (piv < -tol) out.psd = false;
    remaining.erase(best);
    for (Eigen::Index i : remaining)
      for (Eigen::Index j : remaining) a(i, j) -= a(i, k) * a(k, j) / piv;
  }
  return out;
}

inline double min_eigenvalue(const Matrix& m) {
  detail::require_symmetric(m);
  if (m.rows() == 0) throw Error("empty matrix");
  Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

/// Smallest eigenvalue of q evaluated at the witness matrices.
inline double recheck_witness(const Poly& q, const Witness& w) {
  const Matrix v = evaluate(q, MatrixPoint{w.X, w.H});
  return min_eigenvalue((v + v.transpose()) / 2.0);
}

// ---------------------------------------------------------------------------
// Sampling

namespace detail {

struct Draw {
  std::vector<Matrix> X;
  std::optional<Matrix> H;
};

inline Draw draw_point(const SampleConfig& cfg, std::uint64_t domain, int g, bool with_h, int n, int s) {
  Draw d;
  for (int slot = 0; slot < g; ++slot) {
    SubStream st(cfg.seed, domain, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(s),
                 static_cast<std::uint64_t>(slot));
    d.X.push_back(random_symmetric(st, n, cfg.entry_range));
  }
  if (with_h) {
    SubStream st(cfg.seed, domain, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(s),
                 static_cast<std::uint64_t>(g));
    d.H = random_symmetric(st, n, cfg.entry_range);
  }
  return d;
}

inline double sample_min_eig(const Poly& p, const Draw& d) {
  const Matrix v = evaluate(p, MatrixPoint{d.X, d.H});
  return min_eigenvalue((v + v.transpose()) / 2.0);
}

}  // namespace detail

/// Searches seeded random symmetric tuples for a point where p is not PSD.
/// Refutes matrix positivity; never certifies it. Sizes are scanned in the
/// configured order, samples by index; the first failure in that order is
/// reported whatever `threads` is.
inline SampleVerdict sample_matrix_positive(const Poly& p, const SampleConfig& cfg, unsigned threads = 1) {
  cfg.validate();
  if (!p.is_symmetric()) throw Error("positivity sampling needs a symmetric polynomial");
  const int g = p.num_vars();
  const bool with_h = p.contains_direction();
  const std::size_t per = static_cast<std::size_t>(cfg.samples_per_size);
  const std::size_t total = cfg.sizes.size() * per;

  auto draw_at = [&](std::size_t flat) {
    const int n = cfg.sizes[flat / per];
    const int s = static_cast<int>(flat % per);
    return detail::draw_point(cfg, kDomainSample, g, with_h, n, s);
  };

  SampleVerdict out;
  auto finish = [&](std::size_t flat, double eig) {
    out.samples_tested = flat + 1;
    out.min_eig_seen = std::min(out.min_eig_seen, eig);
    if (eig < -cfg.tol) {
      detail::Draw d = draw_at(flat);
      out.kind = SampleVerdict::Kind::Counterexample;
      out.witness = Witness{cfg.sizes[flat / per], std::move(d.X), std::move(d.H), eig,
                            static_cast<int>(flat % per)};
      return true;
    }
    return false;
  };

  if (threads <= 1) {
    for (std::size_t f = 0; f < total; ++f)
      if (finish(f, detail::sample_min_eig(p, draw_at(f)))) break;
    return out;
  }

  std::vector<double> eigs(total);
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&, t] {
      for (std::size_t f = t; f < total; f += threads) eigs[f] = detail::sample_min_eig(p, draw_at(f));
    });
  for (auto& th : pool) th.join();
  for (std::size_t f = 0; f < total; ++f)
    if (finish(f, eigs[f])) break;
  return out;
}

struct PointVerdict {
  enum class Kind { CertifiedAllH, CounterexampleH, Unknown };
  Kind kind = Kind::Unknown;
  std::optional<Witness> witness;
  LdlResult middle;
};

/// Lap[p](X)[H] >= 0 for every H is certified when the middle matrix of
/// Lap[p] is PSD at X. Otherwise sampled H's are tried; failing that the
/// answer is Unknown.
inline PointVerdict subharmonic_at_point(const Poly& p, const std::vector<Matrix>& X, const SampleConfig& cfg) {
  cfg.validate();
  if (p.contains_direction()) throw Error("subharmonic_at_point needs an h-free polynomial");
  if (!p.is_symmetric()) throw Error("subharmonic_at_point needs a symmetric polynomial");
  const Poly lap = laplacian(p);
  PointVerdict out;
  if (lap.is_zero()) {
    out.kind = PointVerdict::Kind::CertifiedAllH;
    return out;
  }
  const MiddleMatrixRep rep = extract(lap);
  out.middle = ldl_pivots(evaluate_middle(rep, X), cfg.tol);
  if (out.middle.psd) {
    out.kind = PointVerdict::Kind::CertifiedAllH;
    return out;
  }
  const int n = static_cast<int>(X.front().rows());
  for (int s = 0; s < cfg.h_samples; ++s) {
    SubStream st(cfg.seed, kDomainPointH, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(s), 0);
    Matrix H = random_symmetric(st, n, cfg.entry_range);
    const Matrix v = evaluate(lap, MatrixPoint{X, H});
    const double eig = min_eigenvalue((v + v.transpose()) / 2.0);
    if (eig < -cfg.tol) {
      out.kind = PointVerdict::Kind::CounterexampleH;
      out.witness = Witness{n, X, std::move(H), eig, s};
      return out;
    }
  }
  return out;
}

}  // namespace ncharm
