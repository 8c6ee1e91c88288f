// ncharm: command-line front end for the noncommutative harmonic library.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "ncharm/ncharm.hpp"

using namespace ncharm;

namespace {

struct Globals {
  int vars = 2;
  bool json = false;
  std::uint64_t seed = 0;
  double tol = 1e-9;
  std::string file;
  std::string inline_text;
};

std::string read_stream(std::istream& in) {
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  return read_stream(in);
}

std::string input_text(const Globals& g) {
  if (!g.inline_text.empty() && !g.file.empty())
    throw Error("polynomial given both inline and with --file; pass only one");
  if (!g.inline_text.empty()) return g.inline_text;
  if (!g.file.empty()) return read_file(g.file);
  return read_stream(std::cin);
}

Poly input_poly(const Globals& g) {
  std::string text = input_text(g);
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.pop_back();
  return parse(text, g.vars);
}

std::string fmt_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string render_comm(const CommPoly& cp) {
  if (cp.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : cp.terms()) {
    std::string mono;
    for (std::size_t k = 0; k < e.size(); ++k) {
      if (e[k] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += k + 1 == e.size() ? std::string("h") : "x" + std::to_string(k + 1);
      if (e[k] > 1) mono += "^" + std::to_string(e[k]);
    }
    const bool neg = c < 0;
    const Scalar a = neg ? Scalar(-c) : c;
    std::string coeff = a.get_str();
    if (!first) out += neg ? " - " : " + ";
    else if (neg) out += "-";
    if (mono.empty()) out += coeff;
    else out += (a == 1 ? "" : coeff + "*") + mono;
    first = false;
  }
  return out;
}

std::string render_border(const Word& m) { return m.empty() ? "h" : "h*" + render(m); }

void print_json(const Json& j) { std::cout << j.dump() << "\n"; }

void print_witness(const Witness& w) {
  std::cout << "witness: n=" << w.n << " sample=" << w.sample_index << " min_eig=" << fmt_double(w.min_eig) << "\n";
  std::cout << "witness json: " << to_json(w).dump() << "\n";
}

SampleConfig make_config(const Globals& g, const std::vector<int>& sizes, int samples) {
  SampleConfig cfg;
  cfg.seed = g.seed;
  cfg.tol = g.tol;
  if (!sizes.empty()) cfg.sizes = sizes;
  if (samples >= 0) cfg.samples_per_size = samples;
  cfg.validate();
  return cfg;
}

int cmd_derive(const Globals& g, int var) {
  const Poly d = directional_derivative(input_poly(g), var);
  if (g.json) print_json(to_json(d));
  else std::cout << render(d) << "\n";
  return 0;
}

int cmd_laplacian(const Globals& g) {
  const Poly l = laplacian(input_poly(g));
  if (g.json) print_json(to_json(l));
  else std::cout << render(l) << "\n";
  return 0;
}

int cmd_collapse(const Globals& g) {
  const Poly p = input_poly(g);
  const CommPoly lhs = commutative_collapse(laplacian(p));
  const CommPoly rhs = commutative_laplacian(commutative_collapse(p)).times_h_power(2);
  const bool ok = lhs == rhs;
  if (g.json) {
    print_json(Json{{"collapse_of_laplacian", to_json(lhs)}, {"h2_times_delta", to_json(rhs)}, {"holds", ok}});
  } else {
    std::cout << "collapse(Lap p)     = " << render_comm(lhs) << "\n";
    std::cout << "h^2 Delta(collapse) = " << render_comm(rhs) << "\n";
    std::cout << (ok ? "identity holds" : "identity FAILS") << "\n";
  }
  return ok ? 0 : 1;
}

int cmd_harmonic_basis(const Globals& g, int degree) {
  const HarmonicBasis b = harmonic_basis(g.vars, degree);
  if (g.json) {
    print_json(to_json(b));
    return 0;
  }
  std::cout << "dimension " << b.dimension() << "\n";
  for (const Poly& e : b.elements) std::cout << render(e) << "\n";
  return 0;
}

int cmd_middle_matrix(const Globals& g, bool from_laplacian) {
  Poly q = input_poly(g);
  if (from_laplacian) q = laplacian(q);
  const MiddleMatrixRep rep = extract(q);
  if (g.json) {
    print_json(to_json(rep));
    return 0;
  }
  std::cout << "border:";
  for (std::size_t i = 0; i < rep.border.size(); ++i)
    std::cout << (i ? ", " : " ") << render_border(rep.border[i]);
  std::cout << "\n";
  for (std::size_t i = 0; i < rep.Z.size(); ++i)
    for (std::size_t j = 0; j < rep.Z[i].size(); ++j)
      if (!rep.Z[i][j].is_zero())
        std::cout << "Z[" << i + 1 << "," << j + 1 << "] = " << render(rep.Z[i][j]) << "\n";
  if (const auto z = zeroes_violation(rep))
    std::cout << "zero diagonal at " << z->first + 1 << " with nonzero entry at (" << z->first + 1 << ","
              << z->second + 1 << ")\n";
  return 0;
}

int cmd_classify(const Globals& g, const std::vector<int>& sizes, int samples) {
  const Poly p = input_poly(g);
  const Verdict v = classify(p, make_config(g, sizes, samples));
  const int rc = v.kind == Verdict::Kind::NotSubharmonic ? 1 : 0;
  if (g.json) {
    print_json(to_json(v));
    return rc;
  }
  std::cout << to_string(v.kind) << "\n";
  std::cout << "reason: " << v.reason << "\n";
  if (v.degree2_trace) std::cout << "A1+A2 = " << *v.degree2_trace << "\n";
  if (v.inequality) {
    const Degree4Result& r = *v.inequality;
    std::cout << "inequality: " << to_string(r.region) << " G=" << r.G << " H=" << r.Hh << " J=" << r.Jj
              << " K=" << r.K << " HG-J^2-K^2=" << r.margin << "\n";
  }
  if (v.membership)
    std::cout << "c0 = " << v.membership->c0 << ", c1 = " << v.membership->c1 << ", c2 = " << v.membership->c2
              << "\n";
  if (v.sos)
    for (const SosTerm& t : v.sos->terms) std::cout << "square: " << t.d << " * R^T R, R = " << render(t.R) << "\n";
  if (v.witness) print_witness(*v.witness);
  else if (v.kind == Verdict::Kind::NotSubharmonic) std::cout << "no numeric witness found (algebraic reason only)\n";
  return rc;
}

int cmd_sos(const Globals& g) {
  const SosDecomposition dec = sos_decompose(input_poly(g));
  const bool identity = laplacian_sos_identity_check(dec);
  if (g.json) {
    print_json(Json{{"terms", to_json(dec)}, {"psd", dec.all_positive()}, {"laplacian_identity", identity}});
    return 0;
  }
  for (const SosTerm& t : dec.terms) std::cout << t.d << " * R^T R, R = " << render(t.R) << "\n";
  std::cout << (dec.all_positive() ? "Gram matrix is positive semidefinite" : "Gram matrix is indefinite") << "\n";
  std::cout << "laplacian identity " << (identity ? "holds" : "FAILS") << "\n";
  return 0;
}

int cmd_odd_sandwich(const Globals& g) {
  const SandwichDecomposition s = odd_sandwich(input_poly(g));
  bool vanish = true;
  for (const Poly& t : sandwich_vanishing_terms(s)) vanish = vanish && t.is_zero();
  if (g.json) {
    Json j = to_json(s);
    j["vanishing_conditions"] = vanish;
    print_json(j);
    return 0;
  }
  for (std::size_t m = 0; m < s.basis.size(); ++m) std::cout << "gamma" << m + 1 << " = " << render(s.basis[m]) << "\n";
  for (std::size_t m = 0; m < s.phi.size(); ++m)
    for (std::size_t i = 0; i < s.phi[m].size(); ++i)
      for (std::size_t j = 0; j < s.phi[m][i].size(); ++j)
        if (s.phi[m][i][j] != 0)
          std::cout << "phi[" << m + 1 << "," << i + 1 << "," << j + 1 << "] = " << s.phi[m][i][j] << "\n";
  std::cout << "vanishing conditions " << (vanish ? "hold" : "FAIL") << "\n";
  return 0;
}

int cmd_eval(const Globals& g, const std::string& point_file) {
  const Poly p = input_poly(g);
  const MatrixPoint pt = point_from_json(Json::parse(read_file(point_file)));
  const Matrix v = evaluate(p, pt);
  if (g.json) {
    print_json(Json{{"value", to_json(v)}});
    return 0;
  }
  for (Eigen::Index i = 0; i < v.rows(); ++i) {
    for (Eigen::Index k = 0; k < v.cols(); ++k) std::cout << (k ? " " : "") << fmt_double(v(i, k));
    std::cout << "\n";
  }
  return 0;
}

int cmd_sample(const Globals& g, const std::vector<int>& sizes, int samples, unsigned threads) {
  const Poly p = input_poly(g);
  const SampleVerdict v = sample_matrix_positive(p, make_config(g, sizes, samples), threads);
  const int rc = v.kind == SampleVerdict::Kind::Counterexample ? 1 : 0;
  if (g.json) {
    print_json(to_json(v));
    return rc;
  }
  std::cout << (rc ? "counterexample" : "no counterexample found") << "\n";
  std::cout << "samples tested: " << v.samples_tested << "\n";
  if (v.samples_tested > 0) std::cout << "min eigenvalue seen: " << fmt_double(v.min_eig_seen) << "\n";
  if (v.witness) print_witness(*v.witness);
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Noncommutative harmonic and subharmonic polynomial toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--vars", g.vars, "number of variables g")->check(CLI::Range(1, 254));
  app.add_flag("--json", g.json, "emit JSON");
  app.add_option("--seed", g.seed, "sampling seed")->envname("NCHARM_SEED");
  app.add_option("--tol", g.tol, "eigenvalue tolerance")->check(CLI::PositiveNumber);
  app.add_option("-f,--file", g.file, "read the polynomial from a file");

  auto with_poly = [&](CLI::App* sub) {
    sub->add_option("poly", g.inline_text, "polynomial (default: --file or stdin)");
    return sub;
  };

  int var = 1;
  auto* derive = with_poly(app.add_subcommand("derive", "directional derivative D[p, x_i, h]"));
  derive->add_option("--var", var, "variable index i")->required();

  auto* lap = with_poly(app.add_subcommand("laplacian", "Laplacian Lap[p, h]"));
  auto* collapse = with_poly(app.add_subcommand("collapse-check", "check collapse(Lap p) = h^2 Delta(collapse p)"));

  int degree = 1;
  auto* hb = app.add_subcommand("harmonic-basis", "exact basis of harmonic polynomials");
  hb->add_option("--degree", degree, "degree d")->required()->check(CLI::PositiveNumber);

  bool from_lap = false;
  auto* mm = with_poly(app.add_subcommand("middle-matrix", "border vector and middle matrix"));
  mm->add_flag("--laplacian", from_lap, "take the Laplacian of the input first");

  std::vector<int> sizes;
  int samples = -1;
  unsigned threads = 1;
  auto* cls = with_poly(app.add_subcommand("classify", "classify a homogeneous polynomial in two variables"));
  cls->add_option("--samples", samples, "samples per size")->check(CLI::NonNegativeNumber);
  cls->add_option("--sizes", sizes, "matrix sizes")->delimiter(',');

  auto* sos = with_poly(app.add_subcommand("sos", "sum of squares of harmonics"));
  auto* sandwich = with_poly(app.add_subcommand("odd-sandwich", "odd-degree sandwich decomposition"));

  std::string point_file;
  auto* ev = with_poly(app.add_subcommand("eval", "evaluate at symmetric matrices"));
  ev->add_option("--point", point_file, "JSON file with X (and H)")->required();

  auto* smp = with_poly(app.add_subcommand("sample", "search for a point where p is not PSD"));
  smp->add_option("--samples", samples, "samples per size")->check(CLI::NonNegativeNumber);
  smp->add_option("--sizes", sizes, "matrix sizes")->delimiter(',');
  smp->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (*derive) return cmd_derive(g, var);
    if (*lap) return cmd_laplacian(g);
    if (*collapse) return cmd_collapse(g);
    if (*hb) return cmd_harmonic_basis(g, degree);
    if (*mm) return cmd_middle_matrix(g, from_lap);
    if (*cls) return cmd_classify(g, sizes, samples);
    if (*sos) return cmd_sos(g);
    if (*sandwich) return cmd_odd_sandwich(g);
    if (*ev) return cmd_eval(g, point_file);
    if (*smp) return cmd_sample(g, sizes, samples, threads);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
