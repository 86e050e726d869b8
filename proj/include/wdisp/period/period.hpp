#pragma once

#include <string>
#include <vector>

#include "wdisp/witt/matrix.hpp"

namespace wdisp {

/// Q[u1..u_{h-1}]/J^M with J = (u1, .., u_{h-1}).
inline Ring period_ring(std::size_t h, unsigned M) {
  if (h < 2) throw DomainError("period map needs h >= 2");
  if (M < 1) throw DomainError("J-adic order must be at least 1");
  std::vector<std::string> vars;
  for (std::size_t i = 1; i < h; ++i) vars.push_back("u" + std::to_string(i));
  return Ring::quotient(Ring::polynomial(Ring::rationals(), vars), vars, M);
}

/// Frobenius matrix of the dual Lubin-Tate display reduced mod I_R:
/// p on the superdiagonal of rows 1..h-2, 1 at (h-1, h), last row
/// (p, p u_{h-1}, .., p u_2, u_1). With `reduce` the u_i are set to 0.
inline Matrix<Element> psi_matrix(const Ring& R, std::size_t h, unsigned long p, bool reduce = false) {
  Matrix<Element> Psi(h, h, R.zero());
  Element P = R.from_integer(Integer(p));
  for (std::size_t i = 0; i + 2 < h; ++i) Psi(i, i + 1) = P;
  Psi(h - 2, h - 1) = R.one();
  Psi(h - 1, 0) = P;
  if (reduce) return Psi;
  for (std::size_t j = 1; j + 1 < h; ++j) Psi(h - 1, j) = R.scale(R.variable("u" + std::to_string(h - j)), Integer(p));
  Psi(h - 1, h - 1) = R.variable("u1");
  return Psi;
}

/// u_i -> u_i^p on every entry.
inline Matrix<Element> sigma(const Ring& R, const Matrix<Element>& A, unsigned long p) {
  std::vector<Element> imgs;
  for (std::size_t i = 0; i < R.nvars(); ++i) imgs.push_back(R.pow(R.variable(i), p));
  std::vector<const Element*> ptrs;
  for (const auto& e : imgs) ptrs.push_back(&e);
  return A.map([&](const Element& x) { return R.evaluate(x, ptrs, R); });
}

struct PeriodApprox {
  std::size_t h = 0;
  unsigned long p = 0;
  unsigned order = 0;
  Ring ring;
  Matrix<Element> Psi, PsiBar, A;
  std::size_t iterations = 0;
  Matrix<Element> residual;  ///< Psi A^sigma - A PsiBar
  bool residual_zero = false;
  bool integral_mod_Jp = false;
  Element det;
};

/// Largest n with p^n < M, plus one: iterations needed for the J-order of
/// A_{k+1} - A_k (which multiplies by p each step) to reach M.
inline std::size_t period_iteration_bound(unsigned long p, unsigned M) {
  std::size_t n = 0;
  Integer q = 1;
  while (q < M) {
    q *= p;
    ++n;
  }
  return n + 2;
}

/// Fixed point of A -> Psi A^sigma PsiBar^{-1} starting from A = I.
inline PeriodApprox horizontal_sections(std::size_t h, unsigned M, unsigned long p) {
  if (!is_prime(p)) throw DomainError("p must be prime, got " + std::to_string(p));
  PeriodApprox out;
  out.h = h;
  out.p = p;
  out.order = M;
  out.ring = period_ring(h, M);
  const Ring& R = out.ring;
  out.Psi = psi_matrix(R, h, p);
  out.PsiBar = psi_matrix(R, h, p, true);
  Matrix<Element> barInv = ring_inverse(R, out.PsiBar);
  Matrix<Element> A = ring_identity(R, h);
  std::size_t bound = period_iteration_bound(p, M);
  bool stable = false;
  for (std::size_t it = 1; it <= bound + 1; ++it) {
    Matrix<Element> next = ring_mul(R, ring_mul(R, out.Psi, sigma(R, A, p)), barInv);
    out.iterations = it;
    if (next == A) {
      stable = true;
      break;
    }
    A = std::move(next);
  }
  if (!stable) throw std::logic_error("horizontal sections did not stabilize within the iteration bound");
  out.A = A;
  Matrix<Element> lhs = ring_mul(R, out.Psi, sigma(R, A, p));
  Matrix<Element> rhs = ring_mul(R, A, out.PsiBar);
  out.residual = Matrix<Element>(h, h);
  out.residual_zero = true;
  for (std::size_t k = 0; k < lhs.a.size(); ++k) {
    out.residual.a[k] = R.sub(lhs.a[k], rhs.a[k]);
    if (!out.residual.a[k].terms.empty()) out.residual_zero = false;
  }
  out.integral_mod_Jp = true;
  for (const auto& e : A.a)
    for (const auto& t : e.terms)
      if (total_degree(t.m) < long(p)) {
        Rational q(t.c, e.den);
        q.canonicalize();
        if (divisible(q.get_den(), Integer(p))) out.integral_mod_Jp = false;
      }
  out.det = ring_det(R, A);
  if (R.constant_term(out.det) == 0) throw std::logic_error("horizontal section matrix is not invertible");
  return out;
}

/// Last row of A.
inline std::vector<Element> period_map(const PeriodApprox& PA) {
  std::vector<Element> row;
  for (std::size_t j = 0; j < PA.h; ++j) row.push_back(PA.A(PA.h - 1, j));
  return row;
}

/// Reduces entries into a coarser truncation of the same variables.
inline Matrix<Element> truncate_order(const Ring& from, const Matrix<Element>& A, const Ring& to) {
  return A.map([&](const Element& x) { return from.transfer(x, to); });
}

/// Expected A mod J^p: identity with last row (u_{h-1}, .., u_1, 1).
inline Matrix<Element> expected_sections_mod_Jp(const Ring& R, std::size_t h) {
  Matrix<Element> E = ring_identity(R, h);
  for (std::size_t j = 0; j + 1 < h; ++j) E(h - 1, j) = R.variable("u" + std::to_string(h - 1 - j));
  return E;
}

/// Homogeneous coordinates agree up to scaling: x_i y_j = x_j y_i.
inline bool projectively_equal(const Ring& R, const std::vector<Element>& x, const std::vector<Element>& y) {
  if (x.size() != y.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j)
      if (R.mul(x[i], y[j]) != R.mul(x[j], y[i])) return false;
  return true;
}

/// Moves the first homogeneous coordinate to the end:
/// [1 : u_{h-1} : .. : u_1] -> [u_{h-1} : .. : u_1 : 1].
inline std::vector<Element> rotate_to_period_coordinates(std::vector<Element> point) {
  if (!point.empty()) std::rotate(point.begin(), point.begin() + 1, point.end());
  return point;
}

}  // namespace wdisp
