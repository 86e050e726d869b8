#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wdisp/witt/matrix.hpp"

namespace wdisp {

/// Display in matrix form: height h, dimension d, and the matrix form
/// B = (b_ij)^{-1} over W_N(R). P has basis e_1..e_h and
/// Q = I_R P + <e_{d+1}, ..., e_h>.
template <WittContext W>
struct Display {
  std::size_t h = 0, d = 0;
  Matrix<typename W::Vec> B;
};

/// Coordinate change phi = [[a, v(b)], [c, e]] stored by blocks, so that b is
/// kept at full length.
template <WittContext W>
struct CoordinateChange {
  Matrix<typename W::Vec> a, b, c, e;
};

template <WittContext W>
struct ChangeResult {
  Display<W> display;
  /// w0 of the lower-right block of phi: its action on Q / I_R P. For d = h-1
  /// this is the 1x1 factor scaling the canonical 1-form.
  Matrix<Element> factor;
};

template <WittContext W>
std::size_t display_length(const W& w, const Display<W>& D) {
  return effective_length(w, D.B);
}

/// Validates shape and invertibility of w0(B).
template <WittContext W>
Display<W> make_display(const W& w, std::size_t h, std::size_t d, Matrix<typename W::Vec> B) {
  if (h < 2) throw DomainError("display height must be at least 2");
  if (d < 1 || d >= h) throw DomainError("display dimension must satisfy 1 <= d < h");
  if (B.rows != h || B.cols != h) throw DomainError("matrix form must be " + std::to_string(h) + "x" + std::to_string(h));
  if (effective_length(w, B) == 0) throw PrecisionError("matrix form has Witt length 0");
  Element det = ring_det(w.base(), witt_w0(w, B));
  if (!w.base().is_unit(det))
    throw DomainError("w0(B) is not invertible: det = " + w.base().to_string(det) + " is not a unit");
  return Display<W>{h, d, std::move(B)};
}

/// (b_ij) = B^{-1}.
template <WittContext W>
Matrix<typename W::Vec> structure_matrix(const W& w, const Display<W>& D) {
  return witt_inverse(w, D.B);
}

/// F x = (b_ij) diag(1_d, p) f(x).
template <WittContext W>
std::vector<typename W::Vec> apply_F_with(const W& w, const Matrix<typename W::Vec>& U, std::size_t d,
                                           const std::vector<typename W::Vec>& x) {
  if (x.size() != U.rows) throw DomainError("vector length does not match the display height");
  std::vector<typename W::Vec> y;
  for (std::size_t i = 0; i < x.size(); ++i) {
    auto fx = w.frob(x[i]);
    y.push_back(i < d ? fx : w.mul(w.from_integer(Integer(w.p()), w.len(fx)), fx));
  }
  return witt_apply(w, U, y);
}

template <WittContext W>
std::vector<typename W::Vec> apply_F(const W& w, const Display<W>& D, const std::vector<typename W::Vec>& x) {
  return apply_F_with(w, structure_matrix(w, D), D.d, x);
}

/// V^{-1} on an element of Q given as x (top d entries, meaning v(x)) and
/// y (bottom h-d entries): (b_ij) [x; f(y)].
template <WittContext W>
std::vector<typename W::Vec> apply_Vinv_parts_with(const W& w, const Matrix<typename W::Vec>& U, std::size_t d,
                                                    const std::vector<typename W::Vec>& x,
                                                    const std::vector<typename W::Vec>& y) {
  if (x.size() != d || x.size() + y.size() != U.rows) throw DomainError("Q-encoding has the wrong shape");
  std::vector<typename W::Vec> z(x.begin(), x.end());
  for (const auto& v : y) z.push_back(w.frob(v));
  return witt_apply(w, U, z);
}

template <WittContext W>
std::vector<typename W::Vec> apply_Vinv_parts(const W& w, const Display<W>& D, const std::vector<typename W::Vec>& x,
                                               const std::vector<typename W::Vec>& y) {
  return apply_Vinv_parts_with(w, structure_matrix(w, D), D.d, x, y);
}

/// V^{-1} on q = [v x; y]; the first d entries must lie in I_R.
template <WittContext W>
std::vector<typename W::Vec> apply_Vinv(const W& w, const Display<W>& D, const std::vector<typename W::Vec>& q) {
  if (q.size() != D.h) throw DomainError("vector length does not match the display height");
  std::vector<typename W::Vec> x, y;
  for (std::size_t i = 0; i < D.d; ++i) {
    if (!w.in_ideal(q[i])) throw DomainError("entry " + std::to_string(i + 1) + " is not in I_R, so the vector is not in Q");
    x.push_back(w.shift_left(q[i]));
  }
  for (std::size_t i = D.d; i < D.h; ++i) y.push_back(q[i]);
  return apply_Vinv_parts(w, D, x, y);
}

// ---- coordinate changes ----

template <WittContext W>
CoordinateChange<W> identity_change(const W& w, std::size_t h, std::size_t d, std::size_t len) {
  CoordinateChange<W> C;
  C.a = witt_identity(w, d, len);
  C.b = Matrix<typename W::Vec>(d, h - d, w.zero(len));
  C.c = Matrix<typename W::Vec>(h - d, d, w.zero(len));
  C.e = witt_identity(w, h - d, len);
  return C;
}

/// v(x) at length `len`: fixed-length v when x already has that length,
/// otherwise v with the length raised by one.
template <WittContext W>
typename W::Vec versch_to(const W& w, const typename W::Vec& x, std::size_t len) {
  if constexpr (requires { w.versch_ext(x); }) {
    if (w.len(x) < len) {
      auto y = w.versch_ext(x);
      return w.len(y) > len ? w.truncate(y, len) : y;
    }
  }
  return w.versch(x);
}

/// phi = [[a, v(b)], [c, e]].
template <WittContext W>
Matrix<typename W::Vec> phi_matrix(const W& w, const CoordinateChange<W>& C) {
  std::size_t d = C.a.rows, h = d + C.e.rows;
  Matrix<typename W::Vec> phi(h, h);
  std::size_t len = effective_length(w, C.a);
  phi.set_block(0, 0, C.a);
  phi.set_block(0, d, C.b.map([&](const typename W::Vec& x) { return versch_to(w, x, len); }));
  phi.set_block(d, 0, C.c);
  phi.set_block(d, d, C.e);
  return phi;
}

/// [[f a, b], [p f c, f e]]; equals diag(1,p) f(phi) diag(1,p)^{-1}.
template <WittContext W>
Matrix<typename W::Vec> change_left_matrix(const W& w, const CoordinateChange<W>& C) {
  std::size_t d = C.a.rows, h = d + C.e.rows;
  Matrix<typename W::Vec> L(h, h);
  L.set_block(0, 0, witt_frob(w, C.a));
  L.set_block(0, d, C.b);
  Matrix<typename W::Vec> fc = witt_frob(w, C.c);
  for (auto& x : fc.a) x = w.mul(w.from_integer(Integer(w.p()), w.len(x)), x);
  L.set_block(d, 0, fc);
  L.set_block(d, d, witt_frob(w, C.e));
  return L;
}

/// Splits phi into blocks; the upper-right block must lie in I_R.
template <WittContext W>
CoordinateChange<W> change_from_phi(const W& w, const Matrix<typename W::Vec>& phi, std::size_t d) {
  if (!phi.square() || d == 0 || d >= phi.rows) throw DomainError("coordinate change has the wrong shape");
  std::size_t h = phi.rows;
  CoordinateChange<W> C;
  C.a = phi.block(0, 0, d, d);
  C.c = phi.block(d, 0, h - d, d);
  C.e = phi.block(d, d, h - d, h - d);
  Matrix<typename W::Vec> ur = phi.block(0, d, d, h - d);
  for (const auto& x : ur.a)
    if (!w.in_ideal(x)) throw DomainError("upper-right block of the coordinate change is not in I_R");
  C.b = ur.map([&](const typename W::Vec& x) { return w.shift_left(x); });
  return C;
}

/// The change "C1 then C2": its phi is phi2 * phi1. Uses
/// a v(b') = v(f(a) b') and v(b) e' = v(b f(e')).
template <WittContext W>
CoordinateChange<W> compose_changes(const W& w, const CoordinateChange<W>& C2, const CoordinateChange<W>& C1) {
  std::size_t len = std::min(effective_length(w, C1.a), effective_length(w, C2.a));
  auto vmat = [&](const Matrix<typename W::Vec>& m) {
    return m.map([&](const typename W::Vec& x) { return versch_to(w, x, len); });
  };
  CoordinateChange<W> C;
  C.a = witt_add(w, witt_mul(w, C2.a, C1.a), witt_mul(w, vmat(C2.b), C1.c));
  C.b = witt_add(w, witt_mul(w, witt_frob(w, C2.a), C1.b), witt_mul(w, C2.b, witt_frob(w, C1.e)));
  C.c = witt_add(w, witt_mul(w, C2.c, C1.a), witt_mul(w, C2.e, C1.c));
  C.e = witt_add(w, witt_mul(w, C2.e, C1.e), witt_mul(w, C2.c, vmat(C1.b)));
  return C;
}

/// Inverse in the groupoid: a', c', e' are blocks of phi^{-1} and
/// b' = -f(a') b f(e)^{-1}, which makes the composite's b-block vanish.
template <WittContext W>
CoordinateChange<W> inverse_change(const W& w, const CoordinateChange<W>& C) {
  std::size_t d = C.a.rows, h = d + C.e.rows;
  auto inv = witt_inverse(w, phi_matrix(w, C));
  CoordinateChange<W> R;
  R.a = inv.block(0, 0, d, d);
  R.c = inv.block(d, 0, h - d, d);
  R.e = inv.block(d, d, h - d, h - d);
  auto fa = witt_frob(w, R.a);
  auto fe_inv = witt_inverse(w, witt_frob(w, C.e));
  R.b = witt_mul(w, witt_mul(w, fa, C.b), fe_inv).map([&](const typename W::Vec& x) { return w.neg(x); });
  return R;
}

template <WittContext W>
bool changes_equal(const W& w, const CoordinateChange<W>& x, const CoordinateChange<W>& y) {
  return witt_matrix_equal(w, x.a, y.a) && witt_matrix_equal(w, x.b, y.b) && witt_matrix_equal(w, x.c, y.c) &&
         witt_matrix_equal(w, x.e, y.e);
}

template <WittContext W>
Matrix<Element> one_form_factor(const W& w, const CoordinateChange<W>& C) {
  return witt_w0(w, C.e);
}

/// B' = L B phi^{-1} with L and phi^{-1} supplied.
template <WittContext W>
Display<W> change_of_coords_prepared(const W& w, const Display<W>& D, const Matrix<typename W::Vec>& L,
                                     const Matrix<typename W::Vec>& phi_inv) {
  return Display<W>{D.h, D.d, witt_mul(w, witt_mul(w, L, D.B), phi_inv)};
}

/// B' = [[f a, b], [p f c, f e]] B phi^{-1}.
template <WittContext W>
ChangeResult<W> change_of_coords(const W& w, const Display<W>& D, const CoordinateChange<W>& C) {
  if (C.a.rows != D.d || C.e.rows != D.h - D.d || C.b.rows != D.d || C.b.cols != D.h - D.d || C.c.rows != D.h - D.d ||
      C.c.cols != D.d)
    throw DomainError("coordinate change blocks do not match (h, d) = (" + std::to_string(D.h) + ", " + std::to_string(D.d) + ")");
  auto phi = phi_matrix(w, C);
  Element det = ring_det(w.base(), witt_w0(w, phi));
  if (!w.base().is_unit(det)) throw DomainError("coordinate change is not invertible");
  auto phi_inv = witt_inverse(w, phi);
  auto L = change_left_matrix(w, C);
  return ChangeResult<W>{change_of_coords_prepared(w, D, L, phi_inv), one_form_factor(w, C)};
}

// ---- nilpotence ----

struct Nilpotence {
  enum class Kind { Nilpotent, NotNilpotent, Unknown };
  Kind kind = Kind::Unknown;
  std::size_t n = 0;  // smallest n for Nilpotent, iterations tried otherwise
  std::string to_string() const {
    switch (kind) {
      case Kind::Nilpotent: return "Nilpotent(" + std::to_string(n) + ")";
      case Kind::NotNilpotent: return "NotNilpotent";
      case Kind::Unknown: return "Unknown";
    }
    return "?";
  }
  friend bool operator==(const Nilpotence&, const Nilpotence&) = default;
};

/// Default bound: the ideal exponent of R/(p) if it is a truncation, else 32.
inline std::size_t default_nilpotence_bound(const Ring& R, unsigned long p) {
  try {
    Ring Rp = R.mod_p(p);
    if (Rp.shape().exponent) return Rp.shape().exponent;
  } catch (const DomainError&) {
  }
  return 32;
}

/// Smallest n with f^n(Bbar) ... f(Bbar) Bbar = 0, where Bbar is the lower-right
/// (h-d)x(h-d) corner of w0(B) in R/(p).
template <WittContext W>
Nilpotence is_nilpotent(const W& w, const Display<W>& D, std::optional<std::size_t> max_iter = std::nullopt) {
  const Ring& R = w.base();
  unsigned long p = w.p();
  if (R.is_unit(R.from_integer(Integer(p)))) return {Nilpotence::Kind::Nilpotent, 0};
  Ring Rp = R.mod_p(p);
  std::size_t bound = max_iter ? *max_iter : default_nilpotence_bound(R, p);
  std::size_t k = D.h - D.d;
  Matrix<Element> bar(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) bar(i, j) = R.transfer(w.component(D.B(D.d + i, D.d + j), 0), Rp);
  auto is_zero = [&](const Matrix<Element>& m) {
    for (const auto& e : m.a)
      if (!e.terms.empty()) return false;
    return true;
  };
  Matrix<Element> prod = bar, twist = bar;
  for (std::size_t n = 0; n <= bound; ++n) {
    if (is_zero(prod)) return {Nilpotence::Kind::Nilpotent, n};
    if (n == bound) break;
    twist = twist.map([&](const Element& e) { return Rp.frobenius_power(e); });
    prod = ring_mul(Rp, twist, prod);
  }
  if (Rp.is_unit(ring_det(Rp, bar))) return {Nilpotence::Kind::NotNilpotent, bound};
  return {Nilpotence::Kind::Unknown, bound};
}

// ---- duality ----
//
// Derivation of the dual matrix form. Write U = (b_ij) = B^{-1}, so
// F e_j = U e_j (j <= d) and V^{-1} e_j = U e_j (j > d). On P^t with dual
// basis e^1..e^h, Q^t = <e^1..e^d> + I_R <e^{d+1}..e^h> (functionals taking Q
// into I_R). Set g^i = sum_k B_ik e^k, the i-th row of B, so g^i(U e_j) = delta_ij.
// Claim: V^{-t} e^i = g^i for i <= d and F^t e^i = g^i for i > d. The defining
// relation v(<V^{-t} g, V^{-1} x>) = <g, x> for g in Q^t, x in Q is checked on
// generators:
//   g = e^i (i <= d), x = e_j (j > d):      v(g^i(U e_j)) = v(0) = 0 = e^i(e_j);
//   g = e^i (i <= d), x = v(b) e_j (j <= d): V^{-1}x = b U e_j, so
//                                            v(b delta_ij) = v(b) delta_ij;
//   g = v(a) e^i (i > d), x = e_j (j > d):  V^{-t}g = a F^t e^i = a g^i, so
//                                            v(a delta_ij) = v(a) delta_ij;
//   g = v(a) e^i (i > d), x = v(b) e_j (j <= d): both sides vanish (i != j).
// The dual display has the d' = h - d generators e^{d+1}..e^h outside Q^t, so
// it is written in the reordered basis eps = (e^{d+1}, .., e^h, e^1, .., e^d),
// eps_l = e^{s(l)} with s(l) = d + l for l < h - d and s(h - d + l) = l
// (0-based). Its structure matrix is U^t(l, k) = B(s(k), s(l)), so the dual
// matrix form is (U^t)^{-1} with entries B^t(k, l) = U(s(l), s(k)). Applying
// the construction twice composes s with its counterpart for d' and returns B
// itself, so the identity change exhibits the biduality isomorphism. For the
// Lubin-Tate display this gives F^t = B^T diag(p, .., p, 1) on e^1..e^h.

/// Position in (e^1..e^h) of the l-th vector of the reordered dual basis.
inline std::size_t dual_basis_index(std::size_t h, std::size_t d, std::size_t l) {
  return l < h - d ? d + l : l - (h - d);
}

template <WittContext W>
Display<W> dual(const W& w, const Display<W>& D) {
  auto U = structure_matrix(w, D);
  Matrix<typename W::Vec> Bt(D.h, D.h);
  for (std::size_t k = 0; k < D.h; ++k)
    for (std::size_t l = 0; l < D.h; ++l) Bt(k, l) = U(dual_basis_index(D.h, D.d, l), dual_basis_index(D.h, D.d, k));
  return Display<W>{D.h, D.h - D.d, std::move(Bt)};
}

/// Checks v(<V^{-t} g, V^{-1} x>) = <g, x> for g over the generators of Q^t
/// and x over the generators of Q, with Witt scalars a, b drawn from
/// `scalars` in the v(.) slots. Returns an empty string on success, else a
/// description of the first failure.
template <WittContext W>
std::string dual_pairing_failure(const W& w, const Display<W>& D, const std::vector<typename W::Vec>& scalars) {
  using Vec = typename W::Vec;
  const std::size_t h = D.h, d = D.d;
  Display<W> Dt = dual(w, D);
  auto U = structure_matrix(w, D);
  auto Ut = structure_matrix(w, Dt);
  std::size_t len = display_length(w, D);
  struct Gen {
    std::vector<Vec> top, bottom;  // V^{-1}-encoding: v(top) entries and plain entries
    std::vector<Vec> full;         // the element itself in its own basis
    std::string name;
  };
  // primal generators of Q in basis e
  std::vector<Gen> xs;
  for (std::size_t j = 0; j < h; ++j) {
    std::vector<Vec> scal = j < d ? scalars : std::vector<Vec>{w.one(len)};
    for (std::size_t s = 0; s < scal.size(); ++s) {
      Gen g;
      g.top.assign(d, w.zero(len));
      g.bottom.assign(h - d, w.zero(len));
      g.full.assign(h, w.zero(len));
      if (j < d) {
        g.top[j] = scal[s];
        g.full[j] = w.versch(scal[s]);
        g.name = "v(b" + std::to_string(s) + ")e_" + std::to_string(j + 1);
      } else {
        g.bottom[j - d] = w.one(len);
        g.full[j] = w.one(len);
        g.name = "e_" + std::to_string(j + 1);
      }
      xs.push_back(std::move(g));
    }
  }
  // dual generators of Q^t in basis e (full) and eps (encoding)
  std::vector<Gen> gs;
  const std::size_t dd = h - d;
  for (std::size_t i = 0; i < h; ++i) {
    std::vector<Vec> scal = i >= d ? scalars : std::vector<Vec>{w.one(len)};
    for (std::size_t s = 0; s < scal.size(); ++s) {
      Gen g;
      g.top.assign(dd, w.zero(len));
      g.bottom.assign(h - dd, w.zero(len));
      g.full.assign(h, w.zero(len));
      if (i >= d) {
        g.top[i - d] = scal[s];
        g.full[i] = w.versch(scal[s]);
        g.name = "v(a" + std::to_string(s) + ")e^" + std::to_string(i + 1);
      } else {
        g.bottom[i] = w.one(len);
        g.full[i] = w.one(len);
        g.name = "e^" + std::to_string(i + 1);
      }
      gs.push_back(std::move(g));
    }
  }
  auto pair = [&](const std::vector<Vec>& a, const std::vector<Vec>& b) {
    std::size_t n = ~std::size_t(0);
    for (const auto& v : a) n = std::min(n, w.len(v));
    for (const auto& v : b) n = std::min(n, w.len(v));
    Vec acc = w.zero(n);
    for (std::size_t k = 0; k < a.size(); ++k)
      if (!w.is_zero(a[k]) && !w.is_zero(b[k])) acc = w.add(acc, w.mul(a[k], b[k]));
    return acc;
  };
  for (const auto& x : xs) {
    auto vx = apply_Vinv_parts_with(w, U, d, x.top, x.bottom);
    for (const auto& g : gs) {
      auto eps = apply_Vinv_parts_with(w, Ut, dd, g.top, g.bottom);
      std::vector<Vec> in_e(h);
      for (std::size_t l = 0; l < h; ++l) in_e[dual_basis_index(h, d, l)] = eps[l];
      Vec lhs = w.versch(pair(in_e, vx));
      Vec rhs = pair(g.full, x.full);
      std::size_t n = std::min(w.len(lhs), w.len(rhs));
      if (w.len(lhs) != n || w.len(rhs) != n) {
        if constexpr (requires { w.truncate(lhs, n); }) {
          lhs = w.truncate(lhs, n);
          rhs = w.truncate(rhs, n);
        }
      }
      if (!w.equal(lhs, rhs)) return "pairing fails for g = " + g.name + ", x = " + x.name;
    }
  }
  return {};
}

// ---- canonical reduction at height 2 ----

/// Reduces [[alpha, beta], [gamma, delta]] with beta a unit to [[0, 1], [gamma', delta']]
/// via phi = [[1, 0], [alpha, beta]]. Returns the new display and phi.
template <WittContext W>
std::pair<Display<W>, CoordinateChange<W>> reduce_h2(const W& w, const Display<W>& D) {
  if (D.h != 2 || D.d != 1) throw DomainError("reduce-h2 needs h = 2 and d = 1");
  std::size_t len = display_length(w, D);
  const auto& alpha = D.B(0, 0);
  const auto& beta = D.B(0, 1);
  CoordinateChange<W> C = identity_change(w, 2, 1, len);
  if (w.is_zero(alpha) && w.equal(beta, w.one(len))) return {D, C};
  if (!w.is_unit(beta))
    throw DomainError("the (1,2) entry is not a unit; the reduction needs an extension of R");
  C.c(0, 0) = alpha;
  C.e(0, 0) = beta;
  return {change_of_coords(w, D, C).display, C};
}

}  // namespace wdisp
