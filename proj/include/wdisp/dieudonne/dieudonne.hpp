#pragma once

#include <string>
#include <vector>

#include "wdisp/display/display.hpp"

namespace wdisp {

/// Dieudonne module of a display over a finite field k, as matrices over
/// W_N(k): F x = F_matrix f(x), V x = V_matrix f^{-1}(x).
template <WittContext W>
struct DieudonneModule {
  std::size_t h = 0;
  Matrix<typename W::Vec> F, V;
};

template <class W>
concept PerfectWittContext = WittContext<W> && requires(const W& w, const typename W::Vec& x) {
  { w.frob_inverse(x) } -> std::same_as<typename W::Vec>;
};

template <PerfectWittContext W>
Matrix<typename W::Vec> witt_frob_inverse(const W& w, const Matrix<typename W::Vec>& A) {
  return A.map([&](const typename W::Vec& x) { return w.frob_inverse(x); });
}

/// F = (b_ij) diag(1_d, p); V = [v(w1); f^{-1}(w2)] where B = [w1; w2] by rows.
template <PerfectWittContext W>
DieudonneModule<W> to_dieudonne(const W& w, const Display<W>& D) {
  if (!w.base().is_finite_field()) throw DomainError("Dieudonne modules need a finite base field, got " + w.base().to_string());
  std::size_t len = display_length(w, D);
  auto U = structure_matrix(w, D);
  DieudonneModule<W> M{D.h, U, D.B};
  auto p = w.from_integer(Integer(w.p()), len);
  for (std::size_t i = 0; i < D.h; ++i)
    for (std::size_t j = D.d; j < D.h; ++j) M.F(i, j) = w.mul(p, U(i, j));
  for (std::size_t i = 0; i < D.h; ++i)
    for (std::size_t j = 0; j < D.h; ++j) M.V(i, j) = i < D.d ? w.versch(D.B(i, j)) : w.frob_inverse(D.B(i, j));
  return M;
}

template <PerfectWittContext W>
std::vector<typename W::Vec> dieudonne_F(const W& w, const DieudonneModule<W>& M, const std::vector<typename W::Vec>& x) {
  std::vector<typename W::Vec> fx;
  for (const auto& v : x) fx.push_back(w.frob(v));
  return witt_apply(w, M.F, fx);
}

template <PerfectWittContext W>
std::vector<typename W::Vec> dieudonne_V(const W& w, const DieudonneModule<W>& M, const std::vector<typename W::Vec>& x) {
  std::vector<typename W::Vec> fx;
  for (const auto& v : x) fx.push_back(w.frob_inverse(v));
  return witt_apply(w, M.V, fx);
}

/// F f(V) and V f^{-1}(F) both equal p times the identity.
template <PerfectWittContext W>
bool check_fv(const W& w, const DieudonneModule<W>& M) {
  std::size_t len = effective_length(w, M.F);
  Matrix<typename W::Vec> pI = witt_identity(w, M.h, len);
  for (std::size_t i = 0; i < M.h; ++i) pI(i, i) = w.from_integer(Integer(w.p()), len);
  return witt_matrix_equal(w, witt_mul(w, M.F, witt_frob(w, M.V)), pI) &&
         witt_matrix_equal(w, witt_mul(w, M.V, witt_frob_inverse(w, M.F)), pI);
}

/// g is an isomorphism M -> M' when g F = F' f(g) and g V = V' f^{-1}(g).
template <PerfectWittContext W>
bool dieudonne_isomorphic_under_base_change(const W& w, const DieudonneModule<W>& M, const DieudonneModule<W>& Mp,
                                            const Matrix<typename W::Vec>& g) {
  if (M.h != Mp.h || g.rows != M.h || g.cols != M.h) throw DomainError("Dieudonne modules and base change differ in rank");
  Element det = ring_det(w.base(), witt_w0(w, g));
  if (!w.base().is_unit(det)) return false;
  return witt_matrix_equal(w, witt_mul(w, g, M.F), witt_mul(w, Mp.F, witt_frob(w, g))) &&
         witt_matrix_equal(w, witt_mul(w, g, M.V), witt_mul(w, Mp.V, witt_frob_inverse(w, g)));
}

/// The dual display's module, rewritten on the basis e^1..e^h, has
/// F^t = f(V)^T and V^t = f^{-1}(F)^T. Over F_p the twists are trivial and
/// these are plain transposes.
template <PerfectWittContext W>
bool dual_matches_transpose(const W& w, const Display<W>& D) {
  auto M = to_dieudonne(w, D);
  auto Mt = to_dieudonne(w, dual(w, D));
  Matrix<typename W::Vec> Fe(D.h, D.h), Ve(D.h, D.h);
  for (std::size_t k = 0; k < D.h; ++k)
    for (std::size_t l = 0; l < D.h; ++l) {
      std::size_t a = dual_basis_index(D.h, D.d, k), b = dual_basis_index(D.h, D.d, l);
      Fe(a, b) = Mt.F(k, l);
      Ve(a, b) = Mt.V(k, l);
    }
  return witt_matrix_equal(w, Fe, witt_frob(w, M.V).transpose()) &&
         witt_matrix_equal(w, Ve, witt_frob_inverse(w, M.F).transpose());
}

}  // namespace wdisp
