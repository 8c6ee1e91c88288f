#pragma once

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

#include "ncharm/calculus.hpp"
#include "ncharm/classify.hpp"
#include "ncharm/harmonic.hpp"
#include "ncharm/middle_matrix.hpp"
#include "ncharm/positivity.hpp"

namespace ncharm {

using Json = nlohmann::ordered_json;

// Letters: h -> 0, x_i -> i.

inline Json to_json(const Word& w) {
  Json a = Json::array();
  for (Letter l : w) a.push_back(l.is_direction() ? 0 : l.index());
  return a;
}

inline Word word_from_json(const Json& j) {
  if (!j.is_array()) throw Error("word must be a JSON array");
  std::vector<Letter> letters;
  for (const Json& e : j) {
    if (!e.is_number_integer()) throw Error("word letters must be integers");
    const int k = e.get<int>();
    if (k < 0) throw Error("negative letter code " + std::to_string(k));
    letters.push_back(k == 0 ? Letter::direction() : Letter::variable(k));
  }
  return Word(std::move(letters));
}

inline Json to_json(const Scalar& s) { return to_fraction_string(s); }

inline Json to_json(const Poly& p) {
  Json terms = Json::array();
  for (const auto& [w, c] : p.terms()) terms.push_back(Json{{"coeff", to_fraction_string(c)}, {"word", to_json(w)}});
  return Json{{"g", p.num_vars()}, {"terms", std::move(terms)}};
}

inline Poly poly_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("g") || !j.contains("terms")) throw Error("polynomial JSON needs \"g\" and \"terms\"");
  Poly p(j.at("g").get<int>());
  for (const Json& t : j.at("terms"))
    p.add_term(word_from_json(t.at("word")), parse_scalar(t.at("coeff").get<std::string>()));
  return p;
}

inline Json to_json(const CommPoly& cp) {
  Json terms = Json::array();
  for (const auto& [e, c] : cp.terms()) terms.push_back(Json{{"coeff", to_fraction_string(c)}, {"exponents", e}});
  return Json{{"terms", std::move(terms)}};
}

inline Json to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Matrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw Error("matrix must be a nonempty array of rows");
  const auto n = static_cast<Eigen::Index>(j.size());
  Matrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) throw Error("matrix must be square");
    for (Eigen::Index k = 0; k < n; ++k) m(i, k) = row[static_cast<std::size_t>(k)].get<double>();
  }
  if ((m - m.transpose()).cwiseAbs().maxCoeff() != 0.0) throw Error("matrix must be symmetric");
  return m;
}

/// {"X": [matrix, ...], "H": matrix (optional)}
inline MatrixPoint point_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("X")) throw Error("point JSON needs \"X\"");
  MatrixPoint pt;
  for (const Json& m : j.at("X")) pt.X.push_back(matrix_from_json(m));
  if (j.contains("H")) pt.H = matrix_from_json(j.at("H"));
  return pt;
}

inline Json to_json(const MiddleMatrixRep& rep) {
  Json border = Json::array();
  for (const Word& w : rep.border) border.push_back(to_json(w));
  Json z = Json::array();
  for (const auto& row : rep.Z) {
    Json r = Json::array();
    for (const Poly& e : row) r.push_back(to_json(e));
    z.push_back(std::move(r));
  }
  return Json{{"border", std::move(border)}, {"Z", std::move(z)}};
}

inline Json to_json(const HarmonicBasis& b) {
  Json elems = Json::array();
  for (const Poly& e : b.elements) elems.push_back(to_json(e));
  return Json{{"g", b.g}, {"d", b.d}, {"dimension", b.dimension()}, {"elements", std::move(elems)}};
}

inline Json to_json(const Witness& w) {
  Json x = Json::array();
  for (const Matrix& m : w.X) x.push_back(to_json(m));
  Json out{{"n", w.n}, {"sample_index", w.sample_index}, {"X", std::move(x)}};
  if (w.H) out["H"] = to_json(*w.H);
  out["min_eig"] = w.min_eig;
  return out;
}

inline Json to_json(const SampleVerdict& v) {
  Json out{{"kind", v.kind == SampleVerdict::Kind::Counterexample ? "Counterexample" : "NoCounterexampleFound"},
           {"samples_tested", v.samples_tested}};
  if (v.samples_tested > 0) out["min_eig_seen"] = v.min_eig_seen;
  if (v.witness) out["witness"] = to_json(*v.witness);
  return out;
}

inline Json to_json(const SosDecomposition& dec) {
  Json terms = Json::array();
  for (const SosTerm& t : dec.terms) terms.push_back(Json{{"d", to_fraction_string(t.d)}, {"R", to_json(t.R)}});
  return terms;
}

inline const char* to_string(Degree4Result::Region r) {
  switch (r) {
    case Degree4Result::Region::StrictlyInside: return "StrictlyInside";
    case Degree4Result::Region::Boundary: return "Boundary";
    case Degree4Result::Region::Violated: return "Violated";
  }
  return "Violated";
}

inline Json to_json(const Degree4Result& r) {
  return Json{{"region", to_string(r.region)}, {"G", to_json(r.G)},   {"H", to_json(r.Hh)},
              {"J", to_json(r.Jj)},            {"K", to_json(r.K)},   {"margin", to_json(r.margin)}};
}

inline Json to_json(const Membership& m) {
  return Json{{"c0", to_json(m.c0)}, {"c1", to_json(m.c1)}, {"c2", to_json(m.c2)}};
}

inline Json to_json(const Verdict& v) {
  Json out{{"kind", to_string(v.kind)}};
  if (v.degree2_trace) out["a1_plus_a2"] = to_json(*v.degree2_trace);
  if (v.inequality) out["inequality"] = to_json(*v.inequality);
  if (v.zeroes_pair) out["zeroes"] = Json::array({v.zeroes_pair->first, v.zeroes_pair->second});
  if (v.membership) out["membership"] = to_json(*v.membership);
  if (v.sos) out["sos"] = to_json(*v.sos);
  if (v.witness) out["witness"] = to_json(*v.witness);
  return out;
}

inline Json to_json(const SandwichDecomposition& s) {
  Json basis = Json::array();
  for (const Poly& b : s.basis) basis.push_back(to_json(b));
  Json phi = Json::array();
  for (std::size_t m = 0; m < s.phi.size(); ++m)
    for (std::size_t i = 0; i < s.phi[m].size(); ++i)
      for (std::size_t j = 0; j < s.phi[m][i].size(); ++j)
        if (s.phi[m][i][j] != 0)
          phi.push_back(Json{{"m", m}, {"i", i + 1}, {"j", j}, {"coeff", to_fraction_string(s.phi[m][i][j])}});
  return Json{{"degree", s.degree}, {"basis", std::move(basis)}, {"phi", std::move(phi)}};
}

}  // namespace ncharm
