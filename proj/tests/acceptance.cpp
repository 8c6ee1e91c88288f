// Acceptance checks. Prints one [PASS]/[FAIL] line per criterion and exits
// nonzero if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <thread>

#include "support.hpp"

using namespace ncharm;
using namespace ncharm::testing;

namespace {

using Clock = std::chrono::steady_clock;

Poly P(const char* s, int g = 2) { return parse(s, g); }
Poly re(int d) { return gamma_power_parts(d).first; }
Poly im(int d) { return gamma_power_parts(d).second; }

struct Outcome {
  bool ok = true;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* name, double limit_ms, const std::function<Outcome()>& body) {
  const auto t0 = Clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  const double ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
  const bool in_time = ms <= limit_ms;
  const bool pass = out.ok && in_time;
  if (!pass) ++failures;
  std::printf("[%s] %2d %s (%.3f ms, limit %.0f ms)%s%s\n", pass ? "PASS" : "FAIL", id, name, ms, limit_ms,
              out.detail.empty() ? "" : ": ", out.detail.c_str());
  if (out.ok && !in_time) std::printf("       time limit exceeded\n");
  std::fflush(stdout);
}

bool same_span(const std::vector<Poly>& a, const std::vector<Poly>& b) {
  std::vector<Poly> both = a;
  both.insert(both.end(), b.begin(), b.end());
  const std::size_t r = poly_rank(both);
  return r == poly_rank(a) && r == poly_rank(b);
}

Poly middle_entry(const MiddleMatrixRep& rep, const Word& a, const Word& b) {
  for (std::size_t i = 0; i < rep.border.size(); ++i)
    for (std::size_t j = 0; j < rep.border.size(); ++j)
      if (rep.border[i] == a && rep.border[j] == b) return rep.Z[i][j];
  return Poly(rep.g);
}

// ---------------------------------------------------------------------------

Outcome derivative_example() {
  const Poly p = P("x1^2*x2");
  Poly expected(2);
  expected.add_term(Word{Letter::direction(), Letter::variable(1), Letter::variable(2)}, 1);
  expected.add_term(Word{Letter::variable(1), Letter::direction(), Letter::variable(2)}, 1);
  return {directional_derivative(p, 1) == expected, ""};
}

Outcome gamma_harmonic() {
  for (int d = 1; d <= 12; ++d) {
    auto [r, i] = gamma_power_parts(d);
    if (!laplacian(r).is_zero() || !laplacian(i).is_zero()) return {false, "d=" + std::to_string(d)};
  }
  return {true, "d = 1..12"};
}

Outcome harmonic_dimensions() {
  std::string dims;
  const HarmonicBasis b2 = harmonic_basis(2, 2);
  bool ok = b2.dimension() == 3 && same_span(b2.elements, {re(2), im(2), P("x1*x2")});
  dims += "2:" + std::to_string(b2.dimension());
  for (int d = 3; d <= 8; ++d) {
    const HarmonicBasis b = harmonic_basis(2, d);
    ok = ok && b.dimension() == 2 && same_span(b.elements, {re(d), im(d)});
    dims += " " + std::to_string(d) + ":" + std::to_string(b.dimension());
  }
  return {ok, dims};
}

Outcome degree3_basis() {
  const HarmonicBasis b = harmonic_basis(2, 3);
  const std::vector<Poly> pair = {P("x2^3 - x1^2*x2 - x2*x1^2 - x1*x2*x1"), P("-x1^3 + x1*x2^2 + x2^2*x1 + x2*x1*x2")};
  std::vector<Poly> stacked = b.elements;
  stacked.insert(stacked.end(), pair.begin(), pair.end());
  const std::size_t r = poly_rank(stacked);
  return {b.dimension() == 2 && poly_rank(pair) == 2 && r == 2, "stacked rank " + std::to_string(r)};
}

Outcome middle_round_trip() {
  const Poly q = P("3*x1*h*x2^2*h*x1 + h*x1*x2*x1*h - h*x1*h*x2^2 - x2^2*h*x1*h + 5*x1*x2*h*x2*h*x2*x1");
  const MiddleMatrixRep rep = extract(q);
  const std::vector<Word> border = {Word(), Word::of({1}), Word::of({2, 1}), Word::of({2, 2})};
  const char* z[4][4] = {{"x1*x2*x1", "0", "0", "-x1"}, {"0", "3*x2^2", "0", "0"}, {"0", "0", "5*x2", "0"}, {"-x1", "0", "0", "0"}};
  bool ok = rep.border == border && reconstruct(rep) == q;
  for (std::size_t i = 0; i < 4 && ok; ++i)
    for (std::size_t j = 0; j < 4; ++j) ok = ok && rep.Z[i][j] == P(z[i][j]);
  if (!ok) return {false, "worked example"};
  Rng rng(5);
  for (int k = 0; k < 50; ++k) {
    const Poly r = random_two_h_symmetric(rng, uniform_int(rng, 1, 3), 3, 5);
    if (reconstruct(extract(r)) != r) return {false, "random case " + std::to_string(k)};
  }
  return {true, "worked example + 50 random"};
}

Outcome degree4_middle_matrix() {
  // Symmetric quartic generators A1..A10 and the reference 7 x 7 table.
  const char* generators[10] = {"x1^4",
                                "x1^3*x2 + x2*x1^3",
                                "x1^2*x2*x1 + x1*x2*x1^2",
                                "x1^2*x2^2 + x2^2*x1^2",
                                "x1*x2*x1*x2 + x2*x1*x2*x1",
                                "x1*x2^2*x1",
                                "x1*x2^3 + x2^3*x1",
                                "x2*x1^2*x2",
                                "x2*x1*x2^2 + x2^2*x1*x2",
                                "x2^4"};
  // Border labels h, x1 h, x2 h, x1^2 h, x1x2 h, x2x1 h, x2^2 h are (h m)^T.
  const std::vector<Word> m = {Word(),           Word::of({1}),    Word::of({2}),   Word::of({1, 1}),
                               Word::of({2, 1}), Word::of({1, 2}), Word::of({2, 2})};
  const Poly x1 = P("x1"), x2 = P("x2"), one = P("1");
  for (int k = 0; k < 10; ++k) {
    Scalar A[11];
    for (int i = 1; i <= 10; ++i) A[i] = i == k + 1 ? 1 : 0;
    std::vector<std::vector<Poly>> T(7, std::vector<Poly>(7, Poly(2)));
    T[0][0] = (A[1] + A[8]) * P("x1^2") + (A[6] + A[10]) * P("x2^2") + (A[3] + A[9]) * P("x1*x2 + x2*x1");
    T[0][1] = (A[1] + A[5]) * x1 + (A[3] + A[7]) * x2;
    T[0][2] = (A[2] + A[9]) * x1 + (A[5] + A[10]) * x2;
    T[0][3] = (A[1] + A[4]) * one;
    T[0][4] = (A[3] + A[7]) * one;
    T[0][5] = (A[2] + A[9]) * one;
    T[0][6] = (A[4] + A[10]) * one;
    T[1][1] = (A[1] + A[6]) * one;
    T[1][2] = (A[2] + A[7]) * one;
    T[2][2] = (A[8] + A[10]) * one;
    for (std::size_t i = 0; i < 7; ++i)
      for (std::size_t j = 0; j < i; ++j) T[i][j] = T[j][i].transposed();

    const MiddleMatrixRep rep = extract(laplacian(P(generators[k])));
    for (const Word& w : rep.border)
      if (std::find(m.begin(), m.end(), w) == m.end()) return {false, "unexpected border word for A" + std::to_string(k + 1)};
    for (std::size_t i = 0; i < 7; ++i)
      for (std::size_t j = 0; j < 7; ++j)
        if (middle_entry(rep, m[i], m[j]) != Scalar(2) * T[i][j])
          return {false, "A" + std::to_string(k + 1) + " entry (" + std::to_string(i + 1) + "," +
                             std::to_string(j + 1) + ")"};
  }
  return {true, "10 unit instantiations"};
}

Scalar random_b(Rng& rng) { return make_scalar(uniform_int(rng, -20, 20), 10); }

Outcome degree4_cone() {
  Rng rng(2718);
  SampleConfig cfg;
  int strict = 0, violated = 0, attempts = 0;
  double worst_pivot = std::numeric_limits<double>::infinity();
  while ((strict < 100 || violated < 100) && attempts < 100000) {
    ++attempts;
    Degree4Coeffs b;
    for (auto& x : b.B) x = random_b(rng);
    const Degree4Result r = degree4_inequalities(b);
    const Poly p = b.polynomial();
    if (r.region == Degree4Result::Region::StrictlyInside && strict < 100) {
      ++strict;
      const MiddleMatrixRep rep = extract(laplacian(p));
      for (int n : cfg.sizes)
        for (int s = 0; s < cfg.samples_per_size; ++s) {
          const auto d = ncharm::detail::draw_point(cfg, kDomainSample, 2, false, n, s);
          for (double piv : ldl_pivots(evaluate_middle(rep, d.X), cfg.tol).pivots) worst_pivot = std::min(worst_pivot, piv);
        }
      if (worst_pivot < -1e-8) return {false, "strict tuple with pivot " + std::to_string(worst_pivot)};
    } else if (r.region == Degree4Result::Region::Violated && -r.margin >= make_scalar(1, 10) && violated < 100) {
      ++violated;
      const Poly lap = laplacian(p);
      const SampleVerdict v = sample_matrix_positive(lap, cfg);
      if (v.kind != SampleVerdict::Kind::Counterexample) return {false, "no witness for violated tuple " + render(p)};
      if (std::abs(recheck_witness(lap, *v.witness) - v.witness->min_eig) > 1e-10 || v.witness->min_eig >= -cfg.tol)
        return {false, "witness does not re-verify"};
    }
  }
  char buf[128];
  std::snprintf(buf, sizeof buf, "%d strict (min pivot %.3g), %d violated with witnesses", strict, worst_pivot, violated);
  return {strict == 100 && violated == 100, buf};
}

Outcome boundary_certificates() {
  for (const Poly& p : {re(2) * re(2), P("x1*x2^2*x1")}) {
    const Verdict v = classify(p);
    if (v.kind != Verdict::Kind::SubharmonicBoundaryCertified || !v.sos) return {false, render(p) + ": " + to_string(v.kind)};
    const GramForm gram = gram_from_neighbors(p);
    for (const CongruenceTerm& t : congruence_diagonalize(gram.Phi))
      if (t.d < 0) return {false, "Gram matrix not PSD"};
    if (v.sos->reconstruct() != p || !v.sos->all_positive() || !laplacian_sos_identity_check(*v.sos))
      return {false, "certificate check failed for " + render(p)};
  }
  return {true, "(Re g^2)^2 and x1 x2^2 x1"};
}

Outcome high_even() {
  Rng rng(31415);
  for (int d = 3; d <= 5; ++d)
    for (int k = 0; k < 20; ++k) {
      const Scalar c0 = k % 5 == 0 ? Scalar(0) : make_scalar(uniform_int(rng, 1, 9), uniform_int(rng, 1, 4));
      const Scalar c1 = random_scalar(rng, 9, 4), c2 = random_scalar(rng, 9, 4);
      const Poly p = c0 * re(d) * re(d) + c1 * re(2 * d) + c2 * im(2 * d);
      if (p != c0 * im(d) * im(d) + (c0 + c1) * re(2 * d) + c2 * im(2 * d)) return {false, "lincomb identity"};
      if (p.is_zero()) continue;
      const Verdict v = classify(p);
      const auto want = c0 > 0 ? Verdict::Kind::PurelySubharmonicCertified : Verdict::Kind::Harmonic;
      if (v.kind != want) return {false, "d=" + std::to_string(d) + " kind " + to_string(v.kind)};
      if (c0 > 0 && (!v.membership || v.membership->c0 != c0 || v.membership->c1 != c1 || v.membership->c2 != c2))
        return {false, "coefficients not recovered"};
      if (c0 == 0 && high_even_membership(p)->c1 != c1) return {false, "harmonic coefficients not recovered"};
    }
  return {true, "d = 3,4,5 x 20"};
}

Outcome odd_degree() {
  auto check = [](const Poly& p) {
    const Verdict v = classify(p);
    if (v.kind != Verdict::Kind::NotSubharmonic || !v.witness) return false;
    const double again = recheck_witness(laplacian(p), *v.witness);
    return again < -1e-9 && std::abs(again - v.witness->min_eig) <= 1e-10;
  };
  if (!check(P("x1^3"))) return {false, "x1^3"};
  Rng rng(1618);
  int tested = 0;
  while (tested < 20) {
    const int d = 3 + 2 * uniform_int(rng, 0, 2);
    const Poly p = symmetrize(random_homogeneous(rng, 2, d, 4));
    if (laplacian(p).is_zero()) continue;
    ++tested;
    if (!check(p)) return {false, render(p)};
  }
  return {true, "x1^3 + 20 random"};
}

Outcome degree3_region() {
  SampleConfig cfg;
  const Poly p = P("x1^3 - x1*x2^2 - x2^2*x1 + x2*x1*x2");
  for (int n = 1; n <= 3; ++n) {
    const Matrix I = Matrix::Identity(n, n);
    if (subharmonic_at_point(p, {I, I}, cfg).kind != PointVerdict::Kind::CertifiedAllH) return {false, "+I"};
    const PointVerdict neg = subharmonic_at_point(p, {-I, I}, cfg);
    if (neg.kind != PointVerdict::Kind::CounterexampleH) return {false, "-I"};
  }
  return {true, "n = 1..3"};
}

Outcome sos_pipeline() {
  Rng rng(4669);
  for (int d : {3, 4})
    for (int k = 0; k < 20; ++k) {
      const Scalar c0 = make_scalar(uniform_int(rng, 1, 9), uniform_int(rng, 1, 4));
      const Poly p = c0 * re(d) * re(d) + random_scalar(rng, 9, 4) * re(2 * d) + random_scalar(rng, 9, 4) * im(2 * d);
      const SosDecomposition dec = sos_decompose(p);
      if (dec.reconstruct() != p) return {false, "reconstruction"};
      for (const SosTerm& t : dec.terms)
        if (!laplacian(t.R).is_zero()) return {false, "non-harmonic term"};
      if (!laplacian_sos_identity_check(dec)) return {false, "laplacian formula"};
    }
  return {true, "20 of degree 6, 20 of degree 8"};
}

Outcome collapse_identity() {
  Rng rng(1729);
  for (int k = 0; k < 50; ++k) {
    const Poly p = random_poly(rng, uniform_int(rng, 1, 3), 6, 8);
    if (commutative_collapse(laplacian(p)) != commutative_laplacian(commutative_collapse(p)).times_h_power(2))
      return {false, render(p)};
  }
  return {true, "50 random"};
}

Outcome three_variables() {
  std::vector<std::size_t> dims;
  std::string text;
  for (int d = 1; d <= 5; ++d) {
    dims.push_back(harmonic_basis(3, d).dimension());
    text += (d > 1 ? " " : "") + std::to_string(dims.back());
  }
  bool ok = dims[0] == 3 && dims[1] == 8;
  for (int d = 2; d <= 5; ++d) {
    const std::size_t i = static_cast<std::size_t>(d - 1);
    ok = ok && dims[i] > dims[i - 1] && dims[i] > harmonic_basis(2, d).dimension();
  }
  return {ok, "dims " + text};
}

std::string sampling_suite(unsigned threads) {
  SampleConfig cfg;
  cfg.seed = 20240601;
  Json out = Json::array();
  for (const char* text : {"x1^2", "x1", "x1^4", "h*x1*h", "x1*x2^2*x1 + x2*x1^2*x2 - x1*x2*x1*x2 - x2*x1*x2*x1"}) {
    const Poly p = P(text);
    const Poly q = p.contains_direction() || p.total_degree() <= 2 ? p : laplacian(p);
    out.push_back(to_json(sample_matrix_positive(q, cfg, threads)));
  }
  for (const Poly& p : {P("x1^3"), P("x1^4"), Degree4Coeffs{{0, 0, 0, 2, 1, 1}}.polynomial()})
    out.push_back(to_json(classify(p, cfg)));
  return out.dump();
}

Outcome determinism() {
  const std::string a = sampling_suite(1);
  const std::string b = sampling_suite(1);
  const unsigned hw = 4;
  const std::string c = sampling_suite(hw);
  return {a == b && a == c, std::to_string(a.size()) + " bytes, 1 vs 1 vs " + std::to_string(hw) + " threads"};
}

}  // namespace

int main() {
  criterion(1, "derivative of x1^2 x2", 1, derivative_example);
  criterion(2, "gamma powers harmonic", 1000, gamma_harmonic);
  criterion(3, "harmonic dimensions in two variables", 5000, harmonic_dimensions);
  criterion(4, "degree-3 harmonic basis", 100, degree3_basis);
  criterion(5, "middle matrix round trip", 1000, middle_round_trip);
  criterion(6, "degree-4 Laplacian middle matrix", 1000, degree4_middle_matrix);
  criterion(7, "degree-4 cone", 60000, degree4_cone);
  criterion(8, "boundary certificates", 1000, boundary_certificates);
  criterion(9, "high even degree classification", 5000, high_even);
  criterion(10, "odd degree is never subharmonic", 10000, odd_degree);
  criterion(11, "degree-3 region of subharmonicity", 1000, degree3_region);
  criterion(12, "sum of squares of harmonics", 10000, sos_pipeline);
  criterion(13, "commutative collapse identity", 2000, collapse_identity);
  criterion(14, "three-variable growth", 60000, three_variables);
  criterion(15, "deterministic sampling output", 60000, determinism);
  std::printf("%s: %d failure(s)\n", failures ? "FAILED" : "ALL PASSED", failures);
  return failures ? 1 : 0;
}
