#pragma once

#include <vector>

#include "wdisp/core/integer.hpp"

// Dense univariate polynomials over Z/l (coefficients low degree first).
namespace wdisp::poly {

using Dense = std::vector<Integer>;

inline void trim(Dense& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline Dense reduce(Dense a, const Integer& l) {
  for (auto& c : a) mod_floor_inplace(c, l);
  trim(a);
  return a;
}

inline Dense sub(const Dense& a, const Dense& b, const Integer& l) {
  Dense r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i < a.size()) r[i] += a[i];
    if (i < b.size()) r[i] -= b[i];
  }
  return reduce(std::move(r), l);
}

inline Dense mul(const Dense& a, const Dense& b, const Integer& l) {
  if (a.empty() || b.empty()) return {};
  Dense r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return reduce(std::move(r), l);
}

/// Division with remainder over the field Z/l (l prime, b nonzero).
inline void divmod(const Dense& a, const Dense& b, const Integer& l, Dense& q, Dense& r) {
  r = reduce(a, l);
  Dense bb = reduce(b, l);
  if (bb.empty()) throw std::logic_error("polynomial division by zero");
  q.assign(r.size() >= bb.size() ? r.size() - bb.size() + 1 : 0, Integer(0));
  Integer lead_inv;
  mod_inverse(bb.back(), l, lead_inv);
  while (!r.empty() && r.size() >= bb.size()) {
    std::size_t shift = r.size() - bb.size();
    Integer c = mod_floor(r.back() * lead_inv, l);
    q[shift] = c;
    for (std::size_t i = 0; i < bb.size(); ++i) r[shift + i] -= c * bb[i];
    r = reduce(std::move(r), l);
  }
  trim(q);
}

/// Inverse of a modulo (g, l); returns false if a is not invertible.
inline bool inverse(const Dense& a, const Dense& g, const Integer& l, Dense& out) {
  Dense r0 = reduce(g, l), r1 = reduce(a, l);
  Dense s0, s1{Integer(1)};
  while (!r1.empty()) {
    Dense q, r;
    divmod(r0, r1, l, q, r);
    Dense s = sub(s0, mul(q, s1, l), l);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  if (r0.size() != 1) return false;
  Integer c;
  if (!mod_inverse(r0[0], l, c)) return false;
  out = reduce(mul(s0, Dense{c}, l), l);
  if (out.size() >= g.size()) {
    Dense q, rem;
    divmod(out, g, l, q, rem);
    out = rem;
  }
  return true;
}

/// Brute-force irreducibility over Z/p for small degree.
inline bool irreducible(const Dense& g, unsigned long p) {
  Dense gg = reduce(g, Integer(p));
  if (gg.size() < 2) return false;
  std::size_t m = gg.size() - 1;
  if (m == 1) return true;
  for (std::size_t deg = 1; deg <= m / 2; ++deg) {
    unsigned long count = 1;
    for (std::size_t i = 0; i < deg; ++i) count *= p;
    for (unsigned long t = 0; t < count; ++t) {
      Dense f(deg + 1);
      unsigned long u = t;
      for (std::size_t i = 0; i < deg; ++i) {
        f[i] = u % p;
        u /= p;
      }
      f[deg] = 1;
      Dense q, r;
      divmod(gg, f, Integer(p), q, r);
      if (r.empty()) return false;
    }
  }
  return true;
}

/// Lexicographically first monic irreducible of degree m over Z/p
/// (low coefficients vary fastest).
inline Dense first_irreducible(unsigned long p, unsigned m) {
  unsigned long count = 1;
  for (unsigned i = 0; i < m; ++i) count *= p;
  for (unsigned long t = 0; t < count; ++t) {
    Dense f(m + 1);
    unsigned long u = t;
    for (unsigned i = 0; i < m; ++i) {
      f[i] = u % p;
      u /= p;
    }
    f[m] = 1;
    if (irreducible(f, p)) return f;
  }
  throw std::logic_error("no irreducible polynomial found");
}

}  // namespace wdisp::poly
