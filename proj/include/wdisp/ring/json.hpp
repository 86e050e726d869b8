#pragma once

#include <nlohmann/json.hpp>

#include "wdisp/ring/parse.hpp"

namespace wdisp {

using Json = nlohmann::json;

/// {"terms":[{"exponents":[...],"coefficient":"a" | "a/b"}]}; exponents include
/// the adjoined generator first when the ring has one.
inline Json element_to_json(const Ring& ring, const Element& x) {
  Json terms = Json::array();
  for (const auto& t : x.terms) {
    Json ex = Json::array();
    for (auto e : t.m) ex.push_back(e);
    Rational q(t.c, x.den);
    q.canonicalize();
    terms.push_back(Json{{"exponents", ex}, {"coefficient", to_string(q)}});
  }
  (void)ring;
  return Json{{"terms", terms}};
}

/// Accepts the term object, an expression string, or a plain integer.
inline Element element_from_json(const Ring& ring, const Json& j) {
  if (j.is_string()) return parse_element(j.get<std::string>(), ring);
  if (j.is_number_integer()) return ring.from_integer(Integer(std::to_string(j.get<long long>()), 10));
  if (!j.is_object() || !j.contains("terms") || !j["terms"].is_array())
    throw ParseError("ring element must be an expression string, an integer or {\"terms\": [...]}");
  Element acc = ring.zero();
  for (const auto& t : j["terms"]) {
    if (!t.contains("exponents") || !t.contains("coefficient")) throw ParseError("term needs exponents and coefficient");
    Monomial m;
    for (const auto& e : t["exponents"]) {
      if (!e.is_number_integer()) throw ParseError("exponent must be an integer");
      m.push_back(Exponent(e.get<long long>()));
    }
    if (m.size() != ring.width())
      throw ParseError("term has " + std::to_string(m.size()) + " exponents, ring needs " + std::to_string(ring.width()));
    const auto& cj = t["coefficient"];
    Rational q = cj.is_string() ? parse_rational(cj.get<std::string>())
                                : Rational(Integer(std::to_string(cj.get<long long>()), 10));
    Element term;
    if (q.get_den() == 1) term = ring.make({Term{m, q.get_num()}});
    else term = ring.make({Term{m, q.get_num()}}, q.get_den());
    acc = ring.add(acc, term);
  }
  return acc;
}

inline Json ring_to_json(const Ring& ring) { return ring.to_string(); }

/// Ring from a descriptor string or a JSON descriptor tree.
inline Ring ring_from_json(const Json& j) {
  if (j.is_string()) return parse_ring(j.get<std::string>());
  if (!j.is_object() || !j.contains("kind")) throw ParseError("ring descriptor must be a string or an object with \"kind\"");
  std::string kind = j["kind"].get<std::string>();
  auto integer_field = [&](const char* key) {
    if (!j.contains(key)) throw ParseError(std::string("ring descriptor needs \"") + key + "\"");
    const auto& v = j[key];
    return v.is_string() ? parse_integer(v.get<std::string>()) : Integer(std::to_string(v.get<long long>()), 10);
  };
  auto poly_field = [&]() {
    std::vector<Integer> poly;
    if (j.contains("defining_polynomial"))
      for (const auto& c : j["defining_polynomial"])
        poly.push_back(c.is_string() ? parse_integer(c.get<std::string>()) : Integer(std::to_string(c.get<long long>()), 10));
    return poly;
  };
  try {
    if (kind == "integers") return Ring::integers();
    if (kind == "rationals") return Ring::rationals();
    if (kind == "integers_mod") return Ring::modular(integer_field("modulus"));
    if (kind == "finite_field") {
      Integer p = integer_field("p");
      unsigned m = j.contains("m") ? j["m"].get<unsigned>() : 1;
      std::string gen = j.value("generator", std::string("z"));
      return Ring::finite_field(p.get_ui(), m, poly_field(), gen);
    }
    if (kind == "galois_ring") {
      RingShape s;
      s.kind = CoeffKind::Modular;
      s.modulus = integer_field("modulus");
      s.gen_name = j.value("generator", std::string("z"));
      s.gen_poly = poly_field();
      return Ring(s);
    }
    if (kind == "polynomial") {
      Ring base = ring_from_json(j.at("base"));
      std::vector<std::string> vars = j.at("variables").get<std::vector<std::string>>();
      std::vector<std::string> inv;
      if (j.contains("inverted")) inv = j["inverted"].get<std::vector<std::string>>();
      for (const auto& v : inv) {
        if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
      }
      return Ring::polynomial(base, vars, inv);
    }
    if (kind == "quotient") {
      Ring base = ring_from_json(j.at("base"));
      std::vector<std::string> gens;
      for (const auto& g : j.at("generators")) gens.push_back(g.is_string() ? g.get<std::string>() : std::to_string(g.get<long long>()));
      return Ring::quotient(base, gens, j.at("exponent").get<unsigned>());
    }
  } catch (const Json::exception& e) {
    throw ParseError(std::string("bad ring descriptor: ") + e.what());
  } catch (const DomainError& e) {
    throw ParseError(std::string("bad ring descriptor: ") + e.what());
  }
  throw ParseError("unknown ring kind '" + kind + "'");
}

}  // namespace wdisp
