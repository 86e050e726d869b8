#pragma once

#include <string>
#include <vector>

#include "wdisp/deformation/deformation.hpp"
#include "wdisp/dieudonne/dieudonne.hpp"
#include "wdisp/display/examples.hpp"
#include "wdisp/moduli/moduli.hpp"
#include "wdisp/period/period.hpp"
#include "wdisp/ring/json.hpp"

namespace wdisp {

// ---- text rendering ----

inline std::string witt_text(const WittRing& w, const WittVector& x) {
  std::string out = "[";
  for (std::size_t i = 0; i < x.size(); ++i) out += (i ? ", " : "") + w.base().to_string(x.c[i]);
  return out + "]";
}

inline std::string witt_matrix_text(const WittRing& w, const Matrix<WittVector>& M) {
  std::string out;
  for (std::size_t i = 0; i < M.rows; ++i) {
    for (std::size_t j = 0; j < M.cols; ++j) out += (j ? "  " : "") + witt_text(w, M(i, j));
    out += "\n";
  }
  return out;
}

inline std::string ring_matrix_text(const Ring& R, const Matrix<Element>& M) {
  std::string out = "[";
  for (std::size_t i = 0; i < M.rows; ++i) {
    out += i ? ", [" : "[";
    for (std::size_t j = 0; j < M.cols; ++j) out += (j ? ", " : "") + R.to_string(M(i, j));
    out += "]";
  }
  return out + "]";
}

inline std::string point_text(const Ring& R, const std::vector<Element>& pt) {
  std::string out = "[";
  for (std::size_t i = 0; i < pt.size(); ++i) out += (i ? " : " : "") + R.to_string(pt[i]);
  return out + "]";
}

// ---- Witt vectors ----

inline Json witt_components_json(const WittRing& w, const WittVector& x) {
  Json c = Json::array();
  for (const auto& e : x.c) c.push_back(element_to_json(w.base(), e));
  return c;
}

inline Json witt_to_json(const WittRing& w, const WittVector& x) {
  return Json{{"p", w.p()}, {"N", x.size()}, {"ring", ring_to_json(w.base())}, {"components", witt_components_json(w, x)}};
}

/// A list of components, {"components": [...]}, or a bare element standing
/// for its Teichmuller lift at length `len`.
inline WittVector witt_from_json(const WittRing& w, const Json& j, std::size_t len) {
  const Json* comps = nullptr;
  if (j.is_array()) comps = &j;
  else if (j.is_object() && j.contains("components")) comps = &j["components"];
  if (!comps) return w.teich(element_from_json(w.base(), j), len);
  std::vector<Element> c;
  for (const auto& e : *comps) c.push_back(element_from_json(w.base(), e));
  if (len && c.size() != len)
    throw ParseError("Witt vector has " + std::to_string(c.size()) + " components, expected " + std::to_string(len));
  return w.make(std::move(c));
}

inline Json witt_matrix_json(const WittRing& w, const Matrix<WittVector>& M) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < M.rows; ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < M.cols; ++j) row.push_back(witt_components_json(w, M(i, j)));
    rows.push_back(row);
  }
  return rows;
}

inline Matrix<WittVector> witt_matrix_from_json(const WittRing& w, const Json& j, std::size_t len) {
  if (!j.is_array() || j.empty()) throw ParseError("matrix must be a non-empty array of rows");
  std::size_t r = j.size(), c = j[0].is_array() ? j[0].size() : 0;
  for (std::size_t i = 0; i < r; ++i)
    if (!j[i].is_array() || j[i].size() != c) throw ParseError("matrix rows must have equal length");
  // Without an explicit length, the first component list decides; all-bare matrices use 2.
  if (!len) {
    for (std::size_t i = 0; i < r && !len; ++i)
      for (const auto& x : j[i]) {
        if (x.is_array()) len = x.size();
        else if (x.is_object() && x.contains("components")) len = x["components"].size();
        if (len) break;
      }
    if (!len) len = 2;
  }
  Matrix<WittVector> M(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t k = 0; k < c; ++k) M(i, k) = witt_from_json(w, j[i][k], len);
  }
  return M;
}

inline Json ring_matrix_json(const Ring& R, const Matrix<Element>& M) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < M.rows; ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < M.cols; ++j) row.push_back(element_to_json(R, M(i, j)));
    rows.push_back(row);
  }
  return rows;
}

// ---- displays ----

inline Json display_to_json(const WittRing& w, const Display<WittRing>& D) {
  return Json{{"p", w.p()},
              {"N", display_length(w, D)},
              {"h", D.h},
              {"d", D.d},
              {"ring", ring_to_json(w.base())},
              {"B", witt_matrix_json(w, D.B)}};
}

inline DisplayInstance display_from_json(const Json& j) {
  for (const char* key : {"p", "N", "h", "d", "ring", "B"})
    if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("display document needs \"") + key + "\"");
  Ring R = ring_from_json(j["ring"]);
  unsigned long p = j["p"].get<unsigned long>();
  std::size_t N = j["N"].get<std::size_t>(), h = j["h"].get<std::size_t>(), d = j["d"].get<std::size_t>();
  WittRing w(R, p);
  auto B = witt_matrix_from_json(w, j["B"], N);
  return {w, make_display(w, h, d, std::move(B)), N};
}

inline Json change_to_json(const WittRing& w, const CoordinateChange<WittRing>& C) {
  return Json{{"a", witt_matrix_json(w, C.a)},
              {"b", witt_matrix_json(w, C.b)},
              {"c", witt_matrix_json(w, C.c)},
              {"e", witt_matrix_json(w, C.e)}};
}

/// Blocks {"a","b","c","e"}, or {"phi": h x h matrix} whose upper-right block
/// lies in I_R.
inline CoordinateChange<WittRing> change_from_json(const WittRing& w, const Json& j, std::size_t h, std::size_t d,
                                                   std::size_t len) {
  if (j.is_object() && j.contains("phi")) return change_from_phi(w, witt_matrix_from_json(w, j["phi"], len), d);
  CoordinateChange<WittRing> C = identity_change(w, h, d, len);
  auto block = [&](const char* key, Matrix<WittVector>& dst) {
    if (!j.contains(key)) return;
    auto M = witt_matrix_from_json(w, j[key], len);
    if (M.rows != dst.rows || M.cols != dst.cols) throw ParseError(std::string("block ") + key + " has the wrong shape");
    dst = std::move(M);
  };
  if (!j.is_object()) throw ParseError("coordinate change must be an object");
  block("a", C.a);
  block("b", C.b);
  block("c", C.c);
  block("e", C.e);
  return C;
}

inline Json nilpotence_json(const Nilpotence& n) {
  Json j{{"result", n.to_string()}};
  if (n.kind == Nilpotence::Kind::Nilpotent) j["n"] = n.n;
  else j["iterations"] = n.n;
  return j;
}

// ---- Dieudonne modules ----

inline Json dieudonne_to_json(const WittRing& w, const DieudonneModule<WittRing>& M) {
  return Json{{"k", ring_to_json(w.base())},
              {"N", effective_length(w, M.F)},
              {"h", M.h},
              {"F_matrix", witt_matrix_json(w, M.F)},
              {"V_matrix", witt_matrix_json(w, M.V)}};
}

struct DieudonneInstance {
  WittRing witt;
  DieudonneModule<WittRing> module;
};

inline DieudonneInstance dieudonne_from_json(const Json& j) {
  for (const char* key : {"k", "h", "F_matrix", "V_matrix"})
    if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("Dieudonne document needs \"") + key + "\"");
  Ring k = ring_from_json(j["k"]);
  if (!k.is_finite_field()) throw DomainError("Dieudonne modules need a finite base field, got " + k.to_string());
  WittRing w(k, k.characteristic().get_ui());
  std::size_t N = j.value("N", std::size_t(0));
  DieudonneModule<WittRing> M{j["h"].get<std::size_t>(), witt_matrix_from_json(w, j["F_matrix"], N),
                              witt_matrix_from_json(w, j["V_matrix"], N)};
  if (M.F.rows != M.h || M.F.cols != M.h || M.V.rows != M.h || M.V.cols != M.h)
    throw ParseError("F_matrix and V_matrix must be h x h");
  return {w, std::move(M)};
}

// ---- moduli ----

inline Json assignment_json(const Ring& R, const Assignment& a) {
  Json out = Json::array();
  for (const auto& [name, x] : a) out.push_back(Json{{"generator", name}, {"image", R.to_string(x)}});
  return out;
}

inline Json presentation_to_json(const HopfPresentation& P) {
  return Json{{"p", P.p},
              {"N", P.N},
              {"h", P.h},
              {"coefficients", ring_to_json(Ring::modular(ipow(P.p, P.K)))},
              {"A_generators", P.beta},
              {"Gamma_generators", P.phi},
              {"relations", P.relations},
              {"eta_L", assignment_json(P.Gamma, P.eta_L)},
              {"eta_R", assignment_json(P.Gamma, P.eta_R)},
              {"epsilon", assignment_json(P.A, P.epsilon)},
              {"delta", assignment_json(P.Gamma2, P.delta)},
              {"inverse", assignment_json(P.Gamma, P.inverse)}};
}

// ---- period ----

inline Json coefficient_table(const Ring& R, const Element& x) {
  Json t = Json::array();
  for (const auto& term : x.terms) {
    Rational q(term.c, x.den);
    q.canonicalize();
    Json ex = Json::array();
    for (auto e : term.m) ex.push_back(e);
    t.push_back(Json{{"monomial", R.monomial_string(term.m).empty() ? "1" : R.monomial_string(term.m)},
                     {"exponents", ex},
                     {"coefficient", to_string(q)}});
  }
  return t;
}

inline Json ring_matrix_tables(const Ring& R, const Matrix<Element>& M) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < M.rows; ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < M.cols; ++j) row.push_back(coefficient_table(R, M(i, j)));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace wdisp
