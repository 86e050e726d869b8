#pragma once

#include <algorithm>
#include <concepts>
#include <numeric>
#include <vector>

#include "wdisp/ring/ring.hpp"

namespace wdisp {

/// Operations a Witt ring implementation provides to the display layer.
template <class W>
concept WittContext = requires(const W& w, const typename W::Vec& x, std::size_t n, const Element& r) {
  { w.p() } -> std::convertible_to<unsigned long>;
  { w.base() } -> std::convertible_to<const Ring&>;
  { w.char_p() } -> std::convertible_to<bool>;
  { w.len(x) } -> std::convertible_to<std::size_t>;
  { w.zero(n) } -> std::same_as<typename W::Vec>;
  { w.one(n) } -> std::same_as<typename W::Vec>;
  { w.teich(r, n) } -> std::same_as<typename W::Vec>;
  { w.from_integer(Integer(0), n) } -> std::same_as<typename W::Vec>;
  { w.add(x, x) } -> std::same_as<typename W::Vec>;
  { w.sub(x, x) } -> std::same_as<typename W::Vec>;
  { w.neg(x) } -> std::same_as<typename W::Vec>;
  { w.mul(x, x) } -> std::same_as<typename W::Vec>;
  { w.frob(x) } -> std::same_as<typename W::Vec>;
  { w.versch(x) } -> std::same_as<typename W::Vec>;
  { w.shift_left(x) } -> std::same_as<typename W::Vec>;
  { w.invert(x) } -> std::same_as<typename W::Vec>;
  { w.component(x, n) } -> std::same_as<Element>;
  { w.is_zero(x) } -> std::convertible_to<bool>;
  { w.equal(x, x) } -> std::convertible_to<bool>;
  { w.in_ideal(x) } -> std::convertible_to<bool>;
  { w.is_unit(x) } -> std::convertible_to<bool>;
};

/// Dense row-major matrix.
template <class T>
struct Matrix {
  std::size_t rows = 0, cols = 0;
  std::vector<T> a;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c, const T& fill = T{}) : rows(r), cols(c), a(r * c, fill) {}

  T& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
  bool square() const { return rows == cols; }
  friend bool operator==(const Matrix&, const Matrix&) = default;

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    Matrix m(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) m(i, j) = (*this)(r0 + i, c0 + j);
    return m;
  }
  void set_block(std::size_t r0, std::size_t c0, const Matrix& m) {
    for (std::size_t i = 0; i < m.rows; ++i)
      for (std::size_t j = 0; j < m.cols; ++j) (*this)(r0 + i, c0 + j) = m(i, j);
  }
  Matrix transpose() const {
    Matrix m(cols, rows);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) m(j, i) = (*this)(i, j);
    return m;
  }
  template <class F>
  auto map(F&& f) const {
    using U = decltype(f(a[0]));
    Matrix<U> m(rows, cols);
    for (std::size_t k = 0; k < a.size(); ++k) m.a[k] = f(a[k]);
    return m;
  }
};

/// All permutations of 0..n-1 with their signs (n <= 4 at desk scale).
inline const std::vector<std::pair<std::vector<std::size_t>, int>>& permutations(std::size_t n) {
  static const auto table = [] {
    std::vector<std::vector<std::pair<std::vector<std::size_t>, int>>> t(7);
    for (std::size_t k = 0; k < t.size(); ++k) {
      std::vector<std::size_t> p(k);
      std::iota(p.begin(), p.end(), 0);
      do {
        int sign = 1;
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = i + 1; j < k; ++j)
            if (p[i] > p[j]) sign = -sign;
        t[k].emplace_back(p, sign);
      } while (std::next_permutation(p.begin(), p.end()));
    }
    return t;
  }();
  if (n >= table.size()) throw ResourceError("Leibniz determinant limited to size 6");
  return table[n];
}

// ---- matrices over a dynamic ring ----

inline Matrix<Element> ring_identity(const Ring& R, std::size_t n) {
  Matrix<Element> m(n, n, R.zero());
  for (std::size_t i = 0; i < n; ++i) m(i, i) = R.one();
  return m;
}

inline Matrix<Element> ring_mul(const Ring& R, const Matrix<Element>& A, const Matrix<Element>& B) {
  if (A.cols != B.rows) throw DomainError("matrix size mismatch");
  Matrix<Element> C(A.rows, B.cols);
  for (std::size_t i = 0; i < A.rows; ++i)
    for (std::size_t j = 0; j < B.cols; ++j) {
      Element acc;
      for (std::size_t k = 0; k < A.cols; ++k)
        if (!A(i, k).terms.empty() && !B(k, j).terms.empty()) acc = R.add(acc, R.mul(A(i, k), B(k, j)));
      C(i, j) = std::move(acc);
    }
  return C;
}

inline Element ring_det(const Ring& R, const Matrix<Element>& A) {
  if (!A.square()) throw DomainError("determinant of a non-square matrix");
  Element acc;
  for (const auto& [perm, sign] : permutations(A.rows)) {
    Element t = R.one();
    for (std::size_t i = 0; i < A.rows && !t.terms.empty(); ++i) t = R.mul(t, A(i, perm[i]));
    acc = sign > 0 ? R.add(acc, t) : R.sub(acc, t);
  }
  return acc;
}

inline Matrix<Element> ring_inverse(const Ring& R, const Matrix<Element>& A) {
  std::size_t n = A.rows;
  Element det = ring_det(R, A);
  if (!R.is_unit(det)) throw DomainError("matrix is not invertible: determinant " + R.to_string(det) + " is not a unit");
  Element dinv = R.invert(det);
  Matrix<Element> inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Matrix<Element> minor(n - 1, n - 1);
      for (std::size_t r = 0, rr = 0; r < n; ++r) {
        if (r == j) continue;
        for (std::size_t c = 0, cc = 0; c < n; ++c) {
          if (c == i) continue;
          minor(rr, cc++) = A(r, c);
        }
        ++rr;
      }
      Element cof = n == 1 ? R.one() : ring_det(R, minor);
      if ((i + j) % 2) cof = R.neg(cof);
      inv(i, j) = R.mul(cof, dinv);
    }
  return inv;
}

// ---- matrices over W_N(R) ----

template <WittContext W>
Matrix<typename W::Vec> witt_identity(const W& w, std::size_t n, std::size_t len) {
  Matrix<typename W::Vec> m(n, n, w.zero(len));
  for (std::size_t i = 0; i < n; ++i) m(i, i) = w.one(len);
  return m;
}

/// Smallest Witt length among the entries.
template <WittContext W>
std::size_t effective_length(const W& w, const Matrix<typename W::Vec>& A) {
  std::size_t n = ~std::size_t(0);
  for (const auto& x : A.a) n = std::min(n, w.len(x));
  return A.a.empty() ? 0 : n;
}

template <WittContext W>
Matrix<typename W::Vec> witt_mul(const W& w, const Matrix<typename W::Vec>& A, const Matrix<typename W::Vec>& B) {
  if (A.cols != B.rows) throw DomainError("matrix size mismatch");
  std::size_t len = std::min(effective_length(w, A), effective_length(w, B));
  Matrix<typename W::Vec> C(A.rows, B.cols, w.zero(len));
  for (std::size_t i = 0; i < A.rows; ++i)
    for (std::size_t j = 0; j < B.cols; ++j) {
      auto acc = w.zero(len);
      for (std::size_t k = 0; k < A.cols; ++k) {
        if (w.is_zero(A(i, k)) || w.is_zero(B(k, j))) continue;
        acc = w.add(acc, w.mul(A(i, k), B(k, j)));
      }
      C(i, j) = std::move(acc);
    }
  return C;
}

template <WittContext W>
Matrix<typename W::Vec> witt_add(const W& w, const Matrix<typename W::Vec>& A, const Matrix<typename W::Vec>& B) {
  if (A.rows != B.rows || A.cols != B.cols) throw DomainError("matrix size mismatch");
  Matrix<typename W::Vec> C = A;
  for (std::size_t k = 0; k < A.a.size(); ++k) C.a[k] = w.add(A.a[k], B.a[k]);
  return C;
}

template <WittContext W>
Matrix<typename W::Vec> witt_frob(const W& w, const Matrix<typename W::Vec>& A) {
  return A.map([&](const typename W::Vec& x) { return w.frob(x); });
}

template <WittContext W>
Matrix<Element> witt_w0(const W& w, const Matrix<typename W::Vec>& A) {
  return A.map([&](const typename W::Vec& x) { return w.len(x) ? w.component(x, 0) : w.base().zero(); });
}

template <WittContext W>
typename W::Vec witt_det(const W& w, const Matrix<typename W::Vec>& A) {
  if (!A.square()) throw DomainError("determinant of a non-square matrix");
  std::size_t len = effective_length(w, A);
  auto acc = w.zero(len);
  for (const auto& [perm, sign] : permutations(A.rows)) {
    auto t = w.one(len);
    bool zero = false;
    for (std::size_t i = 0; i < A.rows; ++i) {
      if (w.is_zero(A(i, perm[i]))) {
        zero = true;
        break;
      }
      t = w.mul(t, A(i, perm[i]));
    }
    if (zero) continue;
    acc = sign > 0 ? w.add(acc, t) : w.sub(acc, t);
  }
  return acc;
}

template <WittContext W>
Matrix<typename W::Vec> witt_adjugate(const W& w, const Matrix<typename W::Vec>& A) {
  std::size_t n = A.rows;
  std::size_t len = effective_length(w, A);
  Matrix<typename W::Vec> adj(n, n, w.zero(len));
  if (n == 1) {
    adj(0, 0) = w.one(len);
    return adj;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Matrix<typename W::Vec> minor(n - 1, n - 1);
      for (std::size_t r = 0, rr = 0; r < n; ++r) {
        if (r == j) continue;
        for (std::size_t c = 0, cc = 0; c < n; ++c) {
          if (c == i) continue;
          minor(rr, cc++) = A(r, c);
        }
        ++rr;
      }
      auto cof = witt_det(w, minor);
      adj(i, j) = (i + j) % 2 ? w.neg(cof) : cof;
    }
  return adj;
}

/// A^{-1} = adj(A) * det(A)^{-1}.
template <WittContext W>
Matrix<typename W::Vec> witt_inverse(const W& w, const Matrix<typename W::Vec>& A) {
  if (!A.square()) throw DomainError("inverse of a non-square matrix");
  Element d0 = ring_det(w.base(), witt_w0(w, A));
  if (!w.base().is_unit(d0)) throw DomainError("matrix is not invertible over W(R): w0(det) = " + w.base().to_string(d0));
  auto dinv = w.invert(witt_det(w, A));
  auto adj = witt_adjugate(w, A);
  for (auto& x : adj.a) x = w.mul(x, dinv);
  return adj;
}

/// Applies a matrix to a column vector.
template <WittContext W>
std::vector<typename W::Vec> witt_apply(const W& w, const Matrix<typename W::Vec>& A, const std::vector<typename W::Vec>& x) {
  if (A.cols != x.size()) throw DomainError("matrix/vector size mismatch");
  std::size_t len = effective_length(w, A);
  for (const auto& v : x) len = std::min(len, w.len(v));
  std::vector<typename W::Vec> y(A.rows, w.zero(len));
  for (std::size_t i = 0; i < A.rows; ++i)
    for (std::size_t k = 0; k < A.cols; ++k)
      if (!w.is_zero(A(i, k)) && !w.is_zero(x[k])) y[i] = w.add(y[i], w.mul(A(i, k), x[k]));
  return y;
}

template <WittContext W>
bool witt_matrix_equal(const W& w, const Matrix<typename W::Vec>& A, const Matrix<typename W::Vec>& B) {
  if (A.rows != B.rows || A.cols != B.cols) return false;
  for (std::size_t k = 0; k < A.a.size(); ++k)
    if (!w.equal(A.a[k], B.a[k])) return false;
  return true;
}

template <WittContext W>
Matrix<typename W::Vec> witt_truncate(const W& w, const Matrix<typename W::Vec>& A, std::size_t len) {
  return A.map([&](const typename W::Vec& x) { return w.truncate(x, len); });
}

}  // namespace wdisp
