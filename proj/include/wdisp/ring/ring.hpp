#pragma once

#include <boost/container/small_vector.hpp>

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "wdisp/core/errors.hpp"
#include "wdisp/core/integer.hpp"
#include "wdisp/ring/polyutil.hpp"

namespace wdisp {

using Exponent = std::int32_t;
/// Exponent vector. When the ring has an adjoined generator it sits at index 0.
using Monomial = boost::container::small_vector<Exponent, 6>;

struct Term {
  Monomial m;
  Integer c;
  friend bool operator==(const Term& a, const Term& b) { return a.m == b.m && a.c == b.c; }
};

/// Canonical-form element; only meaningful together with the Ring that made it.
/// Terms are in descending graded-lex order. For rational rings the value is
/// (sum of terms) / den with den > 0 and coprime to the content.
struct Element {
  std::vector<Term> terms;
  Integer den = 1;
  friend bool operator==(const Element& a, const Element& b) {
    return a.den == b.den && a.terms == b.terms;
  }
};

inline long total_degree(const Monomial& m) {
  long s = 0;
  for (auto e : m) s += e;
  return s;
}

/// Strict "a comes before b" in descending graded-lex order.
inline bool grlex_before(const Monomial& a, const Monomial& b) {
  long da = total_degree(a), db = total_degree(b);
  if (da != db) return da > db;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

enum class CoeffKind { Integers, Modular, Rationals };

/// Flattened description of a ring in the tower:
/// coefficients, optional adjoined root of a monic polynomial, polynomial or
/// Laurent variables, and an optional truncation by a power of an ideal
/// generated by variables and at most one prime.
struct RingShape {
  CoeffKind kind = CoeffKind::Integers;
  Integer modulus = 0;
  std::string gen_name;           // empty: no adjoined generator
  std::vector<Integer> gen_poly;  // monic, low degree first
  std::vector<std::string> vars;
  std::vector<bool> inverted;
  std::vector<bool> truncated;
  Integer ideal_prime = 0;
  unsigned exponent = 0;  // 0: no quotient

  friend bool operator==(const RingShape&, const RingShape&) = default;
};

class Ring {
 public:
  Ring() : Ring(RingShape{}) {}
  explicit Ring(RingShape shape) : d_(std::make_shared<Data>(std::move(shape))) {}

  static Ring integers() { return Ring(RingShape{}); }
  static Ring rationals() {
    RingShape s;
    s.kind = CoeffKind::Rationals;
    return Ring(s);
  }
  static Ring modular(const Integer& m) {
    RingShape s;
    s.kind = CoeffKind::Modular;
    s.modulus = m;
    return Ring(s);
  }
  /// F_{p^m}; m = 1 flattens to Z/p. An empty polynomial selects the default.
  static Ring finite_field(unsigned long p, unsigned m, std::vector<Integer> poly = {},
                           std::string gen = "z") {
    if (!is_prime(p)) throw DomainError("finite field characteristic " + std::to_string(p) + " is not prime");
    if (m == 0) throw DomainError("finite field degree must be at least 1");
    if (m == 1 && poly.empty()) return modular(Integer(p));
    if (poly.empty()) poly = poly::first_irreducible(p, m);
    poly = poly::reduce(poly, Integer(p));
    if (poly.size() != m + 1 || poly.back() != 1)
      throw DomainError("defining polynomial must be monic of degree " + std::to_string(m));
    if (!poly::irreducible(poly, p)) throw DomainError("defining polynomial is reducible");
    if (m == 1) return modular(Integer(p));
    RingShape s;
    s.kind = CoeffKind::Modular;
    s.modulus = p;
    s.gen_name = gen;
    s.gen_poly = std::move(poly);
    return Ring(s);
  }
  /// Adjoins variables (a name in `inverted` becomes a Laurent variable).
  static Ring polynomial(const Ring& base, const std::vector<std::string>& names,
                         const std::vector<std::string>& inverted = {}) {
    RingShape s = base.shape();
    if (s.exponent != 0) throw DomainError("cannot adjoin variables to a quotient ring");
    for (const auto& n : names) {
      s.vars.push_back(n);
      s.inverted.push_back(std::find(inverted.begin(), inverted.end(), n) != inverted.end());
      s.truncated.push_back(false);
    }
    return Ring(s);
  }
  /// Quotient by (generators)^M; generators are variable names or one prime.
  static Ring quotient(const Ring& base, const std::vector<std::string>& generators, unsigned M) {
    RingShape s = base.shape();
    if (s.exponent != 0) throw DomainError("ring is already a quotient");
    if (M == 0) throw DomainError("ideal exponent must be at least 1");
    for (const auto& g : generators) {
      auto it = std::find(s.vars.begin(), s.vars.end(), g);
      if (it != s.vars.end()) {
        std::size_t i = it - s.vars.begin();
        if (s.inverted[i]) throw DomainError("Laurent variable '" + g + "' cannot generate a nilpotent ideal");
        s.truncated[i] = true;
        continue;
      }
      Integer q;
      try {
        q = parse_integer(g);
      } catch (const ParseError&) {
        throw DomainError("unsupported ideal generator '" + g + "' (expected a variable or a prime)");
      }
      if (q < 2 || !q.fits_ulong_p() || !is_prime(q.get_ui()))
        throw DomainError("integer ideal generator " + g + " is not a prime");
      if (s.ideal_prime != 0 && s.ideal_prime != q) throw DomainError("at most one prime may generate the ideal");
      s.ideal_prime = q;
    }
    s.exponent = M;
    return Ring(s);
  }

  const RingShape& shape() const { return d_->s; }
  bool same(const Ring& o) const { return d_ == o.d_ || d_->s == o.d_->s; }
  friend bool operator==(const Ring& a, const Ring& b) { return a.same(b); }

  bool has_gen() const { return !d_->s.gen_name.empty(); }
  unsigned gen_degree() const { return has_gen() ? unsigned(d_->s.gen_poly.size() - 1) : 0; }
  std::size_t offset() const { return has_gen() ? 1 : 0; }
  std::size_t nvars() const { return d_->s.vars.size(); }
  std::size_t width() const { return offset() + nvars(); }
  const std::vector<std::string>& var_names() const { return d_->s.vars; }
  bool is_rational() const { return d_->s.kind == CoeffKind::Rationals; }
  bool is_finite_field() const {
    const auto& s = d_->s;
    return s.kind == CoeffKind::Modular && s.vars.empty() && d_->modulus_prime;
  }
  /// Order of the finite field; 0 if the ring is not a finite field.
  Integer field_order() const {
    if (!is_finite_field()) return 0;
    return ipow(d_->s.modulus, std::max(1u, gen_degree()));
  }

  /// Characteristic (0 for characteristic zero).
  Integer characteristic() const { return d_->characteristic; }
  bool has_characteristic(unsigned long p) const { return d_->characteristic == p; }
  /// k with char = p^k, or 0 if the characteristic is not a power of p.
  unsigned p_exponent(unsigned long p) const {
    const Integer& c = d_->characteristic;
    if (c < 2) return 0;
    unsigned long v = valuation(c, p);
    if (v == 0 || ipow(p, v) != c) return 0;
    return unsigned(v);
  }

  std::size_t var_index(const std::string& name) const {
    auto it = std::find(d_->s.vars.begin(), d_->s.vars.end(), name);
    if (it == d_->s.vars.end()) throw DomainError("unknown variable '" + name + "'");
    return it - d_->s.vars.begin();
  }

  // ---- construction ----
  Element zero() const { return Element{}; }
  Element one() const { return from_integer(1); }
  Element from_integer(const Integer& n) const {
    Element e;
    e.terms.push_back(Term{Monomial(width(), 0), n});
    normalize(e);
    return e;
  }
  Element from_rational(const Rational& q) const {
    if (q.get_den() == 1) return from_integer(q.get_num());
    if (is_rational()) {
      Element e;
      e.terms.push_back(Term{Monomial(width(), 0), q.get_num()});
      e.den = q.get_den();
      normalize(e);
      return e;
    }
    return mul(from_integer(q.get_num()), invert(from_integer(q.get_den())));
  }
  Element variable(std::size_t i) const {
    Element e;
    Monomial m(width(), 0);
    m[offset() + i] = 1;
    e.terms.push_back(Term{m, 1});
    normalize(e);
    return e;
  }
  Element variable(const std::string& name) const { return variable(var_index(name)); }
  Element generator() const {
    if (!has_gen()) throw DomainError("ring has no adjoined generator");
    Element e;
    Monomial m(width(), 0);
    m[0] = 1;
    e.terms.push_back(Term{m, 1});
    normalize(e);
    return e;
  }
  /// Builds an element from raw terms (monomials of this ring's width).
  Element make(std::vector<Term> terms, Integer den = 1) const {
    Element e{std::move(terms), std::move(den)};
    for (const auto& t : e.terms)
      if (t.m.size() != width()) throw DomainError("monomial has wrong number of exponents");
    if (e.den != 1 && !is_rational()) {
      Integer d = e.den;
      e.den = 1;
      normalize(e);
      return mul(e, invert(from_integer(d)));
    }
    normalize(e);
    return e;
  }

  // ---- arithmetic ----
  bool is_zero(const Element& x) const { return x.terms.empty(); }
  bool is_one(const Element& x) const {
    return x.den == 1 && x.terms.size() == 1 && x.terms[0].c == 1 &&
           std::all_of(x.terms[0].m.begin(), x.terms[0].m.end(), [](Exponent e) { return e == 0; });
  }
  bool equal(const Element& a, const Element& b) const { return a == b; }

  Element add(const Element& a, const Element& b) const { return combine(a, b, false); }
  Element sub(const Element& a, const Element& b) const { return combine(a, b, true); }
  Element neg(const Element& a) const {
    Element r = a;
    for (auto& t : r.terms) t.c = -t.c;
    reduce_coefficients(r);
    return r;
  }
  Element mul(const Element& a, const Element& b) const {
    if (a.terms.empty() || b.terms.empty()) return Element{};
    Element r;
    r.den = a.den * b.den;
    r.terms.reserve(a.terms.size() * b.terms.size());
    const std::size_t w = width();
    const unsigned M = d_->s.exponent;
    for (const auto& ta : a.terms) {
      long da = ideal_degree(ta.m);
      for (const auto& tb : b.terms) {
        if (M && da + ideal_degree(tb.m) >= long(M)) continue;
        Term t;
        t.m.resize(w);
        for (std::size_t i = 0; i < w; ++i) t.m[i] = ta.m[i] + tb.m[i];
        t.c = ta.c * tb.c;
        r.terms.push_back(std::move(t));
      }
    }
    normalize(r);
    return r;
  }
  Element scale(const Element& a, const Integer& n) const {
    Element r = a;
    for (auto& t : r.terms) t.c *= n;
    normalize(r);
    return r;
  }
  Element pow(Element x, unsigned long e) const {
    Element r = one();
    while (e) {
      if (e & 1) r = mul(r, x);
      e >>= 1;
      if (e) x = mul(x, x);
    }
    return r;
  }
  Element pow(const Element& x, const Integer& e) const {
    if (e < 0) return pow(invert(x), Integer(-e));
    if (e.fits_ulong_p()) return pow(x, e.get_ui());
    Element r = one(), b = x;
    Integer k = e;
    while (k > 0) {
      if (mpz_odd_p(k.get_mpz_t())) r = mul(r, b);
      k >>= 1;
      if (k > 0) b = mul(b, b);
    }
    return r;
  }

  /// Divides by d. Exact in Z-based rings (logic_error otherwise), true
  /// division in Q, multiplication by the inverse when d is a unit.
  Element divide(const Element& x, const Integer& d) const {
    if (d == 0) throw DomainError("division by zero");
    if (is_rational()) {
      Element r = x;
      r.den *= d;
      normalize(r);
      return r;
    }
    const auto& s = d_->s;
    if (s.kind == CoeffKind::Integers && s.ideal_prime == 0) {
      Element r = x;
      for (auto& t : r.terms) {
        if (!divisible(t.c, d)) throw std::logic_error("non-exact division by " + wdisp::to_string(d));
        t.c = exact_div(t.c, d);
      }
      normalize(r);
      return r;
    }
    Element dd = from_integer(d);
    if (is_unit(dd)) return mul(x, invert(dd));
    Element r = x;
    for (auto& t : r.terms) {
      if (!divisible(t.c, d)) throw std::logic_error("non-exact division by " + wdisp::to_string(d));
      t.c = exact_div(t.c, d);
    }
    normalize(r);
    return r;
  }

  // ---- units ----
  bool is_unit(const Element& x) const {
    Element y;
    return unit_seed(x, y);
  }
  Element invert(const Element& x) const {
    Element y;
    if (!unit_seed(x, y)) throw DomainError("element " + to_string(x) + " is not a unit");
    for (int it = 0; it < 256; ++it) {
      Element e = sub(one(), mul(x, y));
      if (e.terms.empty()) return y;
      y = add(y, mul(y, e));
    }
    throw std::logic_error("Newton inversion did not terminate");
  }

  /// x^p; the ring must have characteristic p.
  Element frobenius_power(const Element& x) const {
    const Integer& c = d_->characteristic;
    if (c < 2 || !c.fits_ulong_p() || !is_prime(c.get_ui()))
      throw DomainError("ring " + to_string() + " does not have prime characteristic");
    return pow(x, c.get_ui());
  }

  /// Ring map sending each variable to the assigned element of `target` and
  /// the adjoined generator to the target's generator.
  Element substitute(const Element& x, const std::map<std::string, Element>& assignment,
                     const Ring& target) const {
    for (const auto& v : d_->s.vars)
      if (!assignment.count(v)) throw DomainError("substitution does not assign variable '" + v + "'");
    check_target(target);
    std::vector<const Element*> images;
    for (const auto& v : d_->s.vars) images.push_back(&assignment.at(v));
    return evaluate(x, images, target);
  }
  /// Positional variant of substitute (images[i] is the image of variable i).
  Element evaluate(const Element& x, const std::vector<const Element*>& images, const Ring& target) const {
    if (images.size() != nvars()) throw DomainError("substitution arity mismatch");
    std::vector<std::map<Exponent, Element>> cache(nvars());
    auto power = [&](std::size_t i, Exponent e) -> const Element& {
      auto it = cache[i].find(e);
      if (it != cache[i].end()) return it->second;
      Element v = e >= 0 ? target.pow(*images[i], (unsigned long)e) : target.pow(target.invert(*images[i]), (unsigned long)(-e));
      return cache[i].emplace(e, std::move(v)).first->second;
    };
    Element gen_img;
    if (has_gen()) gen_img = target.generator();
    Element acc;
    for (const auto& t : x.terms) {
      Element v = target.from_integer(t.c);
      if (has_gen() && t.m[0]) v = target.mul(v, target.pow(gen_img, (unsigned long)t.m[0]));
      for (std::size_t i = 0; i < nvars(); ++i)
        if (t.m[offset() + i]) v = target.mul(v, power(i, t.m[offset() + i]));
      acc = target.add(acc, v);
    }
    if (x.den != 1) {
      if (target.is_rational()) {
        acc.den *= x.den;
        target.normalize(acc);
      } else {
        acc = target.mul(acc, target.invert(target.from_integer(x.den)));
      }
    }
    return acc;
  }

  /// R/(p).
  Ring mod_p(unsigned long p) const {
    const auto& s = d_->s;
    if (s.kind == CoeffKind::Rationals) throw DomainError("p is a unit in a rational ring");
    RingShape t = s;
    t.kind = CoeffKind::Modular;
    t.modulus = s.kind == CoeffKind::Integers && s.ideal_prime == 0 ? Integer(p) : gcd(d_->characteristic, Integer(p));
    if (t.modulus == 1) throw DomainError("p is a unit in " + to_string());
    if (!t.gen_poly.empty()) t.gen_poly = reduce_poly(t.gen_poly, t.modulus);
    t.ideal_prime = 0;
    bool any = std::any_of(t.truncated.begin(), t.truncated.end(), [](bool b) { return b; });
    if (!any) t.exponent = 0;
    return Ring(t);
  }
  /// Copies the terms of x (read as integers) into `target`, which must share
  /// this ring's monomial layout.
  Element transfer(const Element& x, const Ring& target) const {
    if (target.width() != width()) throw std::logic_error("transfer between incompatible layouts");
    Element r = x;
    if (!target.is_rational() && r.den != 1) return target.make(std::move(r.terms), r.den);
    target.normalize(r);
    return r;
  }

  // ---- text ----
  std::string to_string() const { return d_->text; }
  std::string to_string(const Element& x) const {
    if (x.terms.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& t : x.terms) {
      Rational q(t.c, x.den);
      q.canonicalize();
      bool negative = q < 0;
      if (negative) q = -q;
      std::string mono = monomial_string(t.m);
      std::string coef = wdisp::to_string(q);
      std::string body;
      if (mono.empty()) body = coef;
      else if (q == 1) body = mono;
      else body = coef + "*" + mono;
      if (first) out += negative ? "-" + body : body;
      else out += (negative ? " - " : " + ") + body;
      first = false;
    }
    return out;
  }
  std::string monomial_string(const Monomial& m) const {
    std::string out;
    auto put = [&](const std::string& name, Exponent e) {
      if (e == 0) return;
      if (!out.empty()) out += "*";
      out += name;
      if (e != 1) out += "^" + std::to_string(e);
    };
    if (has_gen()) put(d_->s.gen_name, m[0]);
    for (std::size_t i = 0; i < nvars(); ++i) put(d_->s.vars[i], m[offset() + i]);
    return out;
  }

  /// Constant coefficient as a rational (monomial of all zero exponents).
  Rational constant_term(const Element& x) const {
    for (const auto& t : x.terms)
      if (std::all_of(t.m.begin(), t.m.end(), [](Exponent e) { return e == 0; })) {
        Rational q(t.c, x.den);
        q.canonicalize();
        return q;
      }
    return 0;
  }

  long ideal_degree(const Monomial& m) const {
    long s = 0;
    for (std::size_t i : d_->trunc_idx) s += m[i];
    return s;
  }

  void normalize(Element& x) const {
    const auto& s = d_->s;
    if (has_gen()) reduce_gen(x.terms);
    if (s.exponent) {
      std::erase_if(x.terms, [&](const Term& t) { return ideal_degree(t.m) >= long(s.exponent); });
    }
    std::sort(x.terms.begin(), x.terms.end(), [](const Term& a, const Term& b) { return grlex_before(a.m, b.m); });
    std::size_t out = 0;
    for (std::size_t i = 0; i < x.terms.size();) {
      std::size_t j = i + 1;
      Term t = std::move(x.terms[i]);
      while (j < x.terms.size() && x.terms[j].m == t.m) t.c += x.terms[j++].c;
      x.terms[out++] = std::move(t);
      i = j;
    }
    x.terms.resize(out);
    reduce_coefficients(x);
  }

 private:
  struct Data {
    RingShape s;
    Integer characteristic = 0;
    bool modulus_prime = false;
    std::vector<std::size_t> trunc_idx;
    std::vector<Integer> level_mod;       // coefficient modulus by ideal degree; empty: none
    std::vector<Integer> residue_primes;  // primes whose reductions detect units
    std::vector<std::vector<Integer>> zpow;  // z^k mod g for k < 2m - 1
    std::string text;

    explicit Data(RingShape shape) : s(std::move(shape)) { validate_and_derive(); }

    void validate_and_derive() {
      if (s.inverted.size() != s.vars.size() || s.truncated.size() != s.vars.size())
        throw std::logic_error("ring shape flag arrays have wrong size");
      if (s.kind == CoeffKind::Modular && s.modulus < 2) throw DomainError("modulus must be at least 2");
      if (s.kind != CoeffKind::Modular) s.modulus = 0;
      for (std::size_t i = 0; i < s.vars.size(); ++i) {
        const auto& v = s.vars[i];
        if (v.empty() || !(std::isalpha((unsigned char)v[0]) || v[0] == '_'))
          throw DomainError("invalid variable name '" + v + "'");
        for (char ch : v)
          if (!(std::isalnum((unsigned char)ch) || ch == '_')) throw DomainError("invalid variable name '" + v + "'");
        if (v == s.gen_name) throw DomainError("variable '" + v + "' clashes with the field generator");
        for (std::size_t j = 0; j < i; ++j)
          if (s.vars[j] == v) throw DomainError("duplicate variable '" + v + "'");
        if (s.inverted[i] && s.truncated[i]) throw DomainError("Laurent variable cannot be truncated");
      }
      bool any_trunc = std::any_of(s.truncated.begin(), s.truncated.end(), [](bool b) { return b; });
      if (s.exponent == 0 && (any_trunc || s.ideal_prime != 0)) throw std::logic_error("truncation without exponent");
      if (s.exponent != 0 && !any_trunc && s.ideal_prime == 0) throw DomainError("empty ideal");
      if (s.ideal_prime != 0) {
        if (s.kind == CoeffKind::Rationals) throw DomainError("a prime is a unit in a rational ring");
        if (s.kind == CoeffKind::Modular && !divisible(s.modulus, s.ideal_prime))
          throw DomainError("ideal prime " + wdisp::to_string(s.ideal_prime) + " is a unit modulo " + wdisp::to_string(s.modulus));
      }
      if (!s.gen_name.empty()) {
        if (s.kind != CoeffKind::Modular) throw DomainError("adjoined generators need modular coefficients");
        if (s.gen_poly.size() < 2 || s.gen_poly.back() != 1) throw DomainError("generator polynomial must be monic");
        for (auto& c : s.gen_poly) mod_floor_inplace(c, s.modulus);
      }
      const std::size_t off = s.gen_name.empty() ? 0 : 1;
      for (std::size_t i = 0; i < s.vars.size(); ++i)
        if (s.truncated[i]) trunc_idx.push_back(off + i);

      // characteristic and coefficient moduli
      if (s.kind == CoeffKind::Modular) {
        modulus_prime = s.modulus.fits_ulong_p() && is_prime(s.modulus.get_ui());
        if (s.ideal_prime != 0) {
          characteristic = gcd(s.modulus, ipow(s.ideal_prime, s.exponent));
          for (unsigned b = 0; b < s.exponent; ++b) level_mod.push_back(gcd(s.modulus, ipow(s.ideal_prime, s.exponent - b)));
          residue_primes.push_back(s.ideal_prime);
        } else {
          characteristic = s.modulus;
          level_mod.push_back(s.modulus);
          residue_primes = prime_factors(s.modulus);
        }
      } else if (s.kind == CoeffKind::Integers && s.ideal_prime != 0) {
        characteristic = ipow(s.ideal_prime, s.exponent);
        for (unsigned b = 0; b < s.exponent; ++b) level_mod.push_back(ipow(s.ideal_prime, s.exponent - b));
        residue_primes.push_back(s.ideal_prime);
      }

      if (!s.gen_name.empty()) {
        std::size_t m = s.gen_poly.size() - 1;
        zpow.resize(2 * m + 1);
        for (std::size_t k = 0; k < zpow.size(); ++k) {
          std::vector<Integer> v(m, Integer(0));
          if (k < m) v[k] = 1;
          else {
            // z * z^{k-1}
            const auto& prev = zpow[k - 1];
            Integer top = prev[m - 1];
            for (std::size_t i = m - 1; i > 0; --i) v[i] = prev[i - 1];
            v[0] = 0;
            for (std::size_t i = 0; i < m; ++i) {
              v[i] -= top * s.gen_poly[i];
              mod_floor_inplace(v[i], s.modulus);
            }
          }
          zpow[k] = std::move(v);
        }
      }
      text = describe();
    }

    std::string describe() const {
      std::ostringstream o;
      auto poly_text = [&]() {
        std::string out;
        std::size_t m = s.gen_poly.size() - 1;
        for (std::size_t k = m + 1; k-- > 0;) {
          const Integer& c = s.gen_poly[k];
          if (c == 0) continue;
          std::string mono = k == 0 ? "" : (k == 1 ? s.gen_name : s.gen_name + "^" + std::to_string(k));
          std::string piece = mono.empty() ? wdisp::to_string(c) : (c == 1 ? mono : wdisp::to_string(c) + "*" + mono);
          out += out.empty() ? piece : "+" + piece;
        }
        return out;
      };
      switch (s.kind) {
        case CoeffKind::Integers: o << "Z"; break;
        case CoeffKind::Rationals: o << "Q"; break;
        case CoeffKind::Modular:
          if (!s.gen_name.empty() && modulus_prime)
            o << "GF(" << s.modulus << "^" << (s.gen_poly.size() - 1) << ";" << poly_text() << ")";
          else if (!s.gen_name.empty())
            o << "Z/" << s.modulus << "{" << poly_text() << "}";
          else
            o << "Z/" << s.modulus;
          break;
      }
      if (!s.vars.empty()) {
        o << "[";
        for (std::size_t i = 0; i < s.vars.size(); ++i) {
          if (i) o << ",";
          o << (s.inverted[i] ? "1/" : "") << s.vars[i];
        }
        o << "]";
      }
      if (s.exponent) {
        o << "/(";
        bool first = true;
        if (s.ideal_prime != 0) {
          o << s.ideal_prime;
          first = false;
        }
        for (std::size_t i = 0; i < s.vars.size(); ++i)
          if (s.truncated[i]) {
            o << (first ? "" : ",") << s.vars[i];
            first = false;
          }
        o << ")^" << s.exponent;
      }
      return o.str();
    }
  };

  static std::vector<Integer> reduce_poly(std::vector<Integer> g, const Integer& m) {
    for (auto& c : g) mod_floor_inplace(c, m);
    return g;
  }

  std::vector<Integer> zpow_of(Exponent k) const {
    const auto& zp = d_->zpow;
    if (std::size_t(k) < zp.size()) return zp[k];
    // z^k = z^(k - half) * z^half, reduced
    std::size_t m = d_->s.gen_poly.size() - 1;
    std::vector<Integer> acc = zp[zp.size() - 1];
    Exponent have = Exponent(zp.size() - 1);
    while (have < k) {
      Integer top = acc[m - 1];
      for (std::size_t i = m - 1; i > 0; --i) acc[i] = acc[i - 1];
      acc[0] = 0;
      for (std::size_t i = 0; i < m; ++i) {
        acc[i] -= top * d_->s.gen_poly[i];
        mod_floor_inplace(acc[i], d_->s.modulus);
      }
      ++have;
    }
    return acc;
  }

  void reduce_gen(std::vector<Term>& terms) const {
    const Exponent m = Exponent(d_->s.gen_poly.size() - 1);
    bool any = false;
    for (const auto& t : terms)
      if (t.m[0] >= m || t.m[0] < 0) any = true;
    if (!any) return;
    std::vector<Term> out;
    out.reserve(terms.size() * 2);
    for (auto& t : terms) {
      if (t.m[0] < 0) throw DomainError("negative power of the field generator");
      if (t.m[0] < m) {
        out.push_back(std::move(t));
        continue;
      }
      auto zp = zpow_of(t.m[0]);
      for (Exponent i = 0; i < m; ++i) {
        if (zp[i] == 0) continue;
        Term nt{t.m, t.c * zp[i]};
        nt.m[0] = i;
        out.push_back(std::move(nt));
      }
    }
    terms = std::move(out);
  }

  void reduce_coefficients(Element& x) const {
    const auto& lm = d_->level_mod;
    if (!lm.empty()) {
      for (auto& t : x.terms) {
        std::size_t b = lm.size() == 1 ? 0 : std::size_t(ideal_degree(t.m));
        mod_floor_inplace(t.c, lm[b]);
      }
    }
    std::erase_if(x.terms, [](const Term& t) { return t.c == 0; });
    if (is_rational()) {
      if (x.terms.empty()) {
        x.den = 1;
        return;
      }
      if (x.den < 0) {
        x.den = -x.den;
        for (auto& t : x.terms) t.c = -t.c;
      }
      Integer g = x.den;
      for (const auto& t : x.terms) {
        if (g == 1) break;
        g = gcd(g, t.c);
      }
      if (g > 1) {
        x.den = exact_div(x.den, g);
        for (auto& t : x.terms) t.c = exact_div(t.c, g);
      }
    } else {
      x.den = 1;
    }
  }

  Element combine(const Element& a, const Element& b, bool subtract) const {
    Element r;
    if (a.den == b.den) {
      r.den = a.den;
      r.terms.reserve(a.terms.size() + b.terms.size());
      // both inputs sorted: merge
      std::size_t i = 0, j = 0;
      while (i < a.terms.size() || j < b.terms.size()) {
        if (j == b.terms.size() || (i < a.terms.size() && grlex_before(a.terms[i].m, b.terms[j].m))) {
          r.terms.push_back(a.terms[i++]);
        } else if (i == a.terms.size() || grlex_before(b.terms[j].m, a.terms[i].m)) {
          Term t = b.terms[j++];
          if (subtract) t.c = -t.c;
          r.terms.push_back(std::move(t));
        } else {
          Term t = a.terms[i++];
          if (subtract) t.c -= b.terms[j++].c;
          else t.c += b.terms[j++].c;
          r.terms.push_back(std::move(t));
        }
      }
      reduce_coefficients(r);
      return r;
    }
    r.den = a.den * b.den;
    for (const auto& t : a.terms) r.terms.push_back(Term{t.m, t.c * b.den});
    for (const auto& t : b.terms) r.terms.push_back(Term{t.m, (subtract ? -t.c : t.c) * a.den});
    normalize(r);
    return r;
  }

  bool laurent_invertible(const Monomial& m) const {
    for (std::size_t i = 0; i < nvars(); ++i)
      if (m[offset() + i] != 0 && !d_->s.inverted[i]) return false;
    return true;
  }

  /// Finds y with x*y = 1 modulo the nilradical; false if x is not a unit.
  bool unit_seed(const Element& x, Element& y) const {
    std::vector<Term> base;
    for (const auto& t : x.terms)
      if (ideal_degree(t.m) == 0) base.push_back(t);
    const auto& s = d_->s;
    if (d_->residue_primes.empty()) {
      // Z or Q coefficients without a nilpotent prime.
      if (has_gen()) throw std::logic_error("generator over characteristic zero");
      if (base.size() != 1 || !laurent_invertible(base[0].m)) return false;
      Monomial inv = base[0].m;
      for (auto& e : inv) e = -e;
      if (s.kind == CoeffKind::Integers) {
        if (base[0].c != 1 && base[0].c != -1) return false;
        y = make({Term{inv, base[0].c}});
        return true;
      }
      Element e;
      e.terms.push_back(Term{inv, x.den});
      e.den = base[0].c;
      normalize(e);
      y = e;
      return true;
    }
    std::vector<Element> parts;
    for (const Integer& l : d_->residue_primes) {
      std::map<Monomial, poly::Dense> groups;
      for (const auto& t : base) {
        Integer c = mod_floor(t.c, l);
        if (c == 0) continue;
        Monomial key = t.m;
        std::size_t zi = 0;
        if (has_gen()) {
          zi = std::size_t(key[0]);
          key[0] = 0;
        }
        auto& g = groups[key];
        if (g.size() <= zi) g.resize(zi + 1, Integer(0));
        g[zi] += c;
      }
      for (auto it = groups.begin(); it != groups.end();) {
        poly::Dense red = poly::reduce(it->second, l);
        if (red.empty()) it = groups.erase(it);
        else {
          it->second = std::move(red);
          ++it;
        }
      }
      if (groups.size() != 1) return false;
      const auto& [mono, zpoly] = *groups.begin();
      if (!laurent_invertible(mono)) return false;
      poly::Dense inv;
      if (has_gen()) {
        if (!poly::inverse(zpoly, reduce_poly(s.gen_poly, l), l, inv)) return false;
      } else {
        Integer c;
        if (!mod_inverse(zpoly[0], l, c)) return false;
        inv = {c};
      }
      std::vector<Term> terms;
      for (std::size_t i = 0; i < inv.size(); ++i) {
        if (inv[i] == 0) continue;
        Monomial m = mono;
        for (auto& e : m) e = -e;
        if (has_gen()) m[0] = Exponent(i);
        terms.push_back(Term{m, inv[i]});
      }
      parts.push_back(make(std::move(terms)));
    }
    if (parts.size() == 1) {
      y = parts[0];
      return true;
    }
    // Chinese remainder combination of the per-prime seeds.
    const Integer& m = d_->characteristic;
    y = zero();
    for (std::size_t k = 0; k < parts.size(); ++k) {
      Integer l = d_->residue_primes[k];
      Integer other = m;
      while (divisible(other, l)) other = exact_div(other, l);
      Integer inv;
      mod_inverse(other, l, inv);
      y = add(y, scale(parts[k], other * inv));
    }
    return true;
  }

  void check_target(const Ring& target) const {
    const Integer& cs = d_->characteristic;
    const Integer& ct = target.characteristic();
    if (cs != 0 && (ct == 0 || !divisible(cs, ct)))
      throw DomainError("target ring " + target.to_string() + " is not an algebra over the coefficients of " + to_string());
    if (is_rational() && !target.is_rational())
      throw DomainError("target ring " + target.to_string() + " does not contain Q");
    if (has_gen()) {
      if (!target.has_gen()) throw DomainError("target ring lacks the field generator");
      const auto& a = d_->s.gen_poly;
      const auto& b = target.shape().gen_poly;
      if (a.size() != b.size()) throw DomainError("field generator degrees differ");
      for (std::size_t i = 0; i < a.size(); ++i)
        if (!divisible(a[i] - b[i], ct == 0 ? Integer(0) : ct) && a[i] != b[i])
          throw DomainError("field generator polynomials differ");
    }
  }

  std::shared_ptr<const Data> d_;
};

}  // namespace wdisp
