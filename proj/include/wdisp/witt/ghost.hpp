#pragma once

#include <vector>

#include "wdisp/ring/ring.hpp"

namespace wdisp {

/// Ghost components w_0..w_{n-1} of (x_0, x_1, ...), computed in `ring`.
inline std::vector<Element> ghost_components(const Ring& ring, unsigned long p,
                                             const std::vector<Element>& x, std::size_t n) {
  if (n > x.size()) throw PrecisionError("ghost index exceeds Witt length");
  std::vector<Element> pw(x.begin(), x.begin() + n), out;
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < k; ++i) pw[i] = ring.pow(pw[i], p);
    Element acc = ring.scale(pw[k], ipow(p, k));
    for (std::size_t i = k; i-- > 0;) acc = ring.add(acc, ring.scale(pw[i], ipow(p, i)));
    out.push_back(std::move(acc));
  }
  return out;
}

/// Solves w_k(c) = g_k for k < g.size():
/// c_k = (g_k - sum_{i<k} p^i c_i^{p^{k-i}}) / p^k. The division must be
/// exact in `ring`; a remainder means a bug and raises std::logic_error.
inline std::vector<Element> solve_ghost(const Ring& ring, unsigned long p, const std::vector<Element>& g) {
  std::vector<Element> c, pw;
  c.reserve(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) {
    for (std::size_t i = 0; i < k; ++i) pw[i] = ring.pow(pw[i], p);
    Element acc = g[k];
    for (std::size_t i = 0; i < k; ++i) acc = ring.sub(acc, ring.scale(pw[i], ipow(p, i)));
    Element ck = k == 0 ? acc : ring.divide(acc, ipow(p, k));
    pw.push_back(ck);
    c.push_back(std::move(ck));
  }
  return c;
}

/// Ring in which Witt components over `base` can be lifted so that the ghost
/// recursion divides exactly: same variables and generator, truncated only by
/// variables, coefficients modulo char * p^(n+1) (or unchanged in
/// characteristic zero / when p is a unit).
inline Ring ghost_work_ring(const Ring& base, unsigned long p, std::size_t n) {
  const RingShape& s = base.shape();
  if (s.kind == CoeffKind::Rationals) return base;
  if (s.kind == CoeffKind::Integers && s.ideal_prime == 0) return base;
  RingShape w = s;
  Integer m = base.characteristic();
  w.kind = CoeffKind::Modular;
  w.modulus = divisible(m, Integer(p)) ? m * ipow(p, n + 1) : m;
  w.ideal_prime = 0;
  bool any = std::any_of(w.truncated.begin(), w.truncated.end(), [](bool b) { return b; });
  if (!any) w.exponent = 0;
  return Ring(w);
}

}  // namespace wdisp
