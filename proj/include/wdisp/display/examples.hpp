#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "wdisp/display/display.hpp"
#include "wdisp/witt/witt.hpp"

namespace wdisp {

/// A display together with the Witt ring it lives over.
struct DisplayInstance {
  WittRing witt;
  Display<WittRing> display;
  std::size_t length = 0;
};

inline std::vector<std::string> lubin_tate_variables(std::size_t h) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i < h; ++i) names.push_back("u" + std::to_string(i));
  return names;
}

/// Z/p^2[u1..u_{h-1}]/(p, u1)^M.
inline Ring lubin_tate_ring(std::size_t h, unsigned long p, unsigned M) {
  Ring base = Ring::polynomial(Ring::modular(ipow(p, 2)), lubin_tate_variables(h));
  return Ring::quotient(base, {std::to_string(p), "u1"}, M);
}

/// Lubin-Tate matrix form: subdiagonal ones, last column (1, [u_{h-1}], ..., [u1]).
/// `coeff[i]` multiplies u_{i+1} (empty means all ones).
inline Matrix<WittVector> lubin_tate_matrix(const WittRing& w, std::size_t h, std::size_t N,
                                            const std::vector<Element>& coeff = {}) {
  const Ring& R = w.base();
  Matrix<WittVector> B(h, h, w.zero(N));
  B(0, h - 1) = w.one(N);
  for (std::size_t i = 1; i < h; ++i) {
    B(i, i - 1) = w.one(N);
    std::size_t k = h - i;  // entry is [u_k]
    Element u = R.variable("u" + std::to_string(k));
    if (!coeff.empty()) u = R.mul(coeff[k - 1], u);
    B(i, h - 1) = w.teich(u, N);
  }
  return B;
}

inline DisplayInstance lubin_tate(std::size_t h, unsigned long p = 2, std::size_t N = 2, unsigned M = 4) {
  if (h < 2) throw DomainError("Lubin-Tate display needs h >= 2");
  WittRing w(lubin_tate_ring(h, p, M), p);
  auto B = lubin_tate_matrix(w, h, N);
  return {w, make_display(w, h, h - 1, std::move(B)), N};
}

/// The same display over F_p with every u_i set to 0.
inline DisplayInstance lubin_tate_fiber(std::size_t h, unsigned long p = 2, std::size_t N = 2) {
  if (h < 2) throw DomainError("Lubin-Tate display needs h >= 2");
  WittRing w(Ring::modular(Integer(p)), p);
  Matrix<WittVector> B(h, h, w.zero(N));
  B(0, h - 1) = w.one(N);
  for (std::size_t i = 1; i < h; ++i) B(i, i - 1) = w.one(N);
  return {w, make_display(w, h, h - 1, std::move(B)), N};
}

/// A generator of the multiplicative group of a finite field, searched in
/// order of the coefficient vector.
inline Element primitive_element(const Ring& R, const Ring& field) {
  Integer q = field.field_order();
  if (q == 0) throw DomainError(field.to_string() + " is not a finite field");
  unsigned long p = field.characteristic().get_ui();
  unsigned m = std::max(1u, field.gen_degree());
  auto factors = prime_factors(q - 1);
  for (Integer idx = 1; idx < q; ++idx) {
    Element x;
    Integer t = idx;
    for (unsigned k = 0; k < m; ++k) {
      Integer digit = t % p;
      t /= p;
      if (digit == 0) continue;
      Element mono = k == 0 ? R.one() : R.pow(R.generator(), (unsigned long)k);
      x = R.add(x, R.scale(mono, digit));
    }
    bool primitive = true;
    for (const auto& r : factors)
      if (R.is_one(R.pow(x, Integer((q - 1) / r)))) {
        primitive = false;
        break;
      }
    if (primitive) return x;
  }
  throw std::logic_error("no primitive element found");
}

struct ZetaFixture {
  DisplayInstance original;   ///< Lubin-Tate display over F_{p^h}[u]/(u)^M
  Display<WittRing> pulled;   ///< u_i replaced by zeta^{1-p^i} u_i
  CoordinateChange<WittRing> change;
  Element zeta;
};

/// F_{p^h}[u1..u_{h-1}]/(u1..u_{h-1})^M with zeta primitive, the pulled-back
/// display and the diagonal change diag([zeta^{p^{h-1}}], ..., [zeta^p], [zeta]).
inline ZetaFixture zeta_action(std::size_t h, unsigned long p = 3, std::size_t N = 2, unsigned M = 3) {
  if (h < 2) throw DomainError("zeta action needs h >= 2");
  Ring field = Ring::finite_field(p, unsigned(h));
  auto vars = lubin_tate_variables(h);
  Ring R = Ring::quotient(Ring::polynomial(field, vars), vars, M);
  WittRing w(R, p);
  Element zeta = primitive_element(R, field);
  Integer q1 = field.field_order() - 1;
  std::vector<Element> coeff;
  for (std::size_t i = 1; i < h; ++i) coeff.push_back(R.pow(zeta, mod_floor(Integer(1) - ipow(p, i), q1)));
  ZetaFixture z{{w, make_display(w, h, h - 1, lubin_tate_matrix(w, h, N)), N},
                make_display(w, h, h - 1, lubin_tate_matrix(w, h, N, coeff)),
                identity_change(w, h, h - 1, N), zeta};
  for (std::size_t i = 0; i + 1 < h; ++i) z.change.a(i, i) = w.teich(R.pow(zeta, ipow(p, h - 1 - i)), N);
  z.change.e(0, 0) = w.teich(zeta, N);
  return z;
}

inline const std::vector<std::string>& example_names() {
  static const std::vector<std::string> names{"lubin-tate-h2",       "lubin-tate-h3",       "lubin-tate-h4",
                                              "lubin-tate-fiber-h2", "lubin-tate-fiber-h3", "zeta-action-h2",
                                              "zeta-action-h3"};
  return names;
}

/// Named corpus entry. zeta-action entries return the pulled-back display.
inline DisplayInstance example_display(const std::string& name, std::optional<unsigned long> p = std::nullopt,
                                       std::optional<std::size_t> N = std::nullopt) {
  const std::string lt = "lubin-tate-h", lf = "lubin-tate-fiber-h", za = "zeta-action-h";
  auto height = [&](const std::string& prefix) -> std::size_t {
    std::string rest = name.substr(prefix.size());
    if (rest.size() != 1 || rest[0] < '2' || rest[0] > '9') throw DomainError("unknown example '" + name + "'");
    return std::size_t(rest[0] - '0');
  };
  bool known = std::find(example_names().begin(), example_names().end(), name) != example_names().end();
  if (!known) throw DomainError("unknown example '" + name + "'");
  if (name.rfind(lf, 0) == 0) return lubin_tate_fiber(height(lf), p.value_or(2), N.value_or(2));
  if (name.rfind(lt, 0) == 0) return lubin_tate(height(lt), p.value_or(2), N.value_or(2));
  ZetaFixture z = zeta_action(height(za), p.value_or(3), N.value_or(2));
  return {z.original.witt, z.pulled, z.original.length};
}

}  // namespace wdisp
