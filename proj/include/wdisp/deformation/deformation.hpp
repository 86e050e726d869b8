#pragma once

#include <numeric>
#include <string>
#include <vector>

#include "wdisp/display/display.hpp"
#include "wdisp/witt/finite.hpp"

namespace wdisp {

/// [w0(B_1h) : .. : w0(B_hh)].
template <WittContext W>
std::vector<Element> projective_point(const W& w, const Display<W>& D) {
  if (D.d + 1 != D.h) throw DomainError("projective point needs d = h - 1");
  std::vector<Element> pt;
  bool any_unit = false;
  for (std::size_t i = 0; i < D.h; ++i) {
    pt.push_back(w.component(D.B(i, D.h - 1), 0));
    any_unit = any_unit || w.base().is_unit(pt.back());
  }
  if (!any_unit) throw std::logic_error("last column of w0(B) has no unit entry");
  return pt;
}

/// Affine chart: coordinate `chart` normalized to 1, the others divided by it.
struct ChartMap {
  std::size_t chart = 0;
  std::vector<Element> coords;
};

inline ChartMap chart_map(const Ring& R, const std::vector<Element>& point, std::size_t chart) {
  if (chart >= point.size()) throw DomainError("chart index out of range");
  if (!R.is_unit(point[chart])) throw DomainError("coordinate " + std::to_string(chart + 1) + " is not a unit");
  Element inv = R.invert(point[chart]);
  ChartMap m{chart, {}};
  for (std::size_t i = 0; i < point.size(); ++i)
    if (i != chart) m.coords.push_back(R.mul(point[i], inv));
  return m;
}

/// Partial derivative with respect to variable `var`.
inline Element derivative(const Ring& R, const Element& x, std::size_t var) {
  std::vector<Term> terms;
  std::size_t k = R.offset() + var;
  for (const auto& t : x.terms) {
    if (t.m[k] == 0) continue;
    Term d = t;
    d.c *= Integer(long(t.m[k]));
    d.m[k] -= 1;
    terms.push_back(std::move(d));
  }
  return R.make(std::move(terms), x.den);
}

struct EtaleResult {
  bool etale = false;
  std::string reason;
  Element jacobian;
};

/// Unit test of det(d coord_i / d var_j).
inline EtaleResult jacobian_etale_check(const Ring& R, const ChartMap& map) {
  EtaleResult r;
  if (map.coords.size() != R.nvars()) {
    r.reason = std::to_string(map.coords.size()) + " coordinate functions against " + std::to_string(R.nvars()) +
               " variables";
    return r;
  }
  std::size_t n = R.nvars();
  Matrix<Element> J(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) J(i, j) = derivative(R, map.coords[i], j);
  r.jacobian = n ? ring_det(R, J) : R.one();
  r.etale = R.is_unit(r.jacobian);
  r.reason = r.etale ? "jacobian determinant is a unit" : "jacobian determinant " + R.to_string(r.jacobian) + " is not a unit";
  return r;
}

struct ChartResult {
  std::size_t chart = 0;
  bool applicable = false;
  EtaleResult result;
};

/// Tries every chart whose normalizing coordinate is a unit.
inline std::vector<ChartResult> etale_all_charts(const Ring& R, const std::vector<Element>& point) {
  std::vector<ChartResult> out;
  for (std::size_t c = 0; c < point.size(); ++c) {
    ChartResult cr{c, R.is_unit(point[c]), {}};
    if (cr.applicable) cr.result = jacobian_etale_check(R, chart_map(R, point, c));
    out.push_back(std::move(cr));
  }
  return out;
}

// ---- tangent lift oracle ----

struct TangentOracleResult {
  std::uint64_t lift_count = 0;
  std::uint64_t class_count = 0;
  std::uint64_t expected = 0;               ///< |k|^{h-1}
  std::vector<std::uint64_t> representatives;  ///< least lift index of each class, ascending
  std::vector<Matrix<WittVector>> representative_matrices;  ///< s for each representative
  bool componentwise_addition = false;      ///< Witt addition on W(eps k) is componentwise
  bool closed_form_matches = false;         ///< class of 0 = matrices with last column in k-span mod I_R
  bool nilpotent = true;
  std::size_t generators = 0;
  Ring ring;  ///< k[e]/(e^2), over which the representative matrices live
};

/// Enumerates lifts B + s over k[e]/(e^2), s in M_h(W_N(e k)), and merges the
/// orbits of the coordinate changes I + t with t over W_N(e k).
inline TangentOracleResult tangent_lift_oracle(const WittRing& wk, const Display<WittRing>& D,
                                               std::uint64_t budget = std::uint64_t(1) << 20) {
  const Ring& k = wk.base();
  if (!k.is_finite_field()) throw DomainError("tangent oracle needs a finite field, got " + k.to_string());
  if (D.d + 1 != D.h) throw DomainError("tangent oracle needs d = h - 1");
  const std::size_t h = D.h, N = display_length(wk, D);
  const unsigned long p = wk.p();
  const unsigned m = std::max(1u, k.gen_degree());
  const std::uint64_t q = k.field_order().get_ui();

  TangentOracleResult res;
  res.nilpotent = is_nilpotent(wk, D).kind == Nilpotence::Kind::Nilpotent;

  std::uint64_t qN = 1, lifts = 1;
  for (std::size_t i = 0; i < N; ++i) qN *= q;
  for (std::size_t i = 0; i < h * h; ++i) {
    if (lifts > budget / qN) throw ResourceError("more than " + std::to_string(budget) + " lifts to enumerate");
    lifts *= qN;
  }
  res.lift_count = lifts;

  Ring ke = Ring::quotient(Ring::polynomial(k, {"e"}), {"e"}, 2);
  res.ring = ke;
  FiniteWittRing fw(ke, p, N, std::max<std::uint64_t>(1024, q * q * qN * qN));
  const std::size_t S = fw.size();
  using Vec = FiniteWittRing::Vec;
  Element eps = ke.variable("e");
  auto lift_elem = [&](const Element& x) { return k.evaluate(x, {}, ke); };
  auto field_elem = [&](std::uint64_t c) {
    Element x;
    for (unsigned i = 0; i < m; ++i) {
      std::uint64_t digit = c % p;
      c /= p;
      if (digit) x = ke.add(x, ke.scale(i ? ke.pow(ke.generator(), (unsigned long)i) : ke.one(), Integer((unsigned long)digit)));
    }
    return x;
  };

  // W_N(e k): entry index = sum c_n q^n with component n equal to e * c_n
  std::vector<Vec> entry_vec(qN);
  std::vector<std::int64_t> vec_entry(S, -1);
  for (std::uint64_t idx = 0; idx < qN; ++idx) {
    std::vector<Element> comps;
    std::uint64_t t = idx;
    for (std::size_t n = 0; n < N; ++n) {
      comps.push_back(ke.mul(eps, field_elem(t % q)));
      t /= q;
    }
    entry_vec[idx] = fw.make(comps);
    vec_entry[entry_vec[idx]] = std::int64_t(idx);
  }
  res.componentwise_addition = true;
  for (std::uint64_t a = 0; a < qN && res.componentwise_addition; ++a)
    for (std::uint64_t b = 0; b < qN; ++b) {
      std::uint64_t c = 0, ta = a, tb = b, w = 1;
      for (std::size_t n = 0; n < N; ++n) {
        // digits are base-p vectors of F_q coordinates; add them digitwise mod p
        std::uint64_t da = ta % q, db = tb % q, dc = 0, pw = 1;
        for (unsigned i = 0; i < m; ++i) {
          dc += ((da % p + db % p) % p) * pw;
          da /= p;
          db /= p;
          pw *= p;
        }
        c += dc * w;
        ta /= q;
        tb /= q;
        w *= q;
      }
      if (fw.add(entry_vec[a], entry_vec[b]) != entry_vec[c]) {
        res.componentwise_addition = false;
        break;
      }
    }

  Matrix<Vec> Bl(h, h);
  for (std::size_t i = 0; i < h; ++i)
    for (std::size_t j = 0; j < h; ++j) {
      std::vector<Element> comps;
      for (std::size_t n = 0; n < N; ++n) comps.push_back(lift_elem(wk.component(D.B(i, j), n)));
      Bl(i, j) = fw.make(comps);
    }

  // generators: one Witt-vector slot of one block entry set to e*c at component n
  struct Gen {
    Matrix<Vec> L, phi_inv;
  };
  std::vector<Gen> gens;
  const std::size_t d = D.d;
  for (std::size_t i = 0; i < h; ++i)
    for (std::size_t j = 0; j < h; ++j)
      for (std::size_t n = 0; n < N; ++n)
        for (unsigned b = 0; b < m; ++b) {
          std::uint64_t c = 1;
          for (unsigned t = 0; t < b; ++t) c *= p;
          std::uint64_t pos = 1;
          for (std::size_t t = 0; t < n; ++t) pos *= q;
          Vec x = entry_vec[c * pos];
          CoordinateChange<FiniteWittRing> C = identity_change(fw, h, d, N);
          if (i < d && j < d) C.a(i, j) = fw.add(C.a(i, j), x);
          else if (i < d) C.b(i, j - d) = x;
          else if (j < d) C.c(i - d, j) = x;
          else C.e(i - d, j - d) = fw.add(C.e(i - d, j - d), x);
          gens.push_back({change_left_matrix(fw, C), witt_inverse(fw, phi_matrix(fw, C))});
        }
  res.generators = gens.size();

  std::vector<std::uint32_t> parent(lifts);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::uint32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  auto unite = [&](std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b) parent[b] = a;
    else parent[a] = b;
  };

  const std::size_t hh = h * h;
  std::vector<Vec> X(hh), T(hh), Y(hh);
  auto matmul = [&](const std::vector<Vec>& A, const std::vector<Vec>& Bm, std::vector<Vec>& C) {
    for (std::size_t r = 0; r < h; ++r)
      for (std::size_t c = 0; c < h; ++c) {
        Vec acc = 0;
        for (std::size_t t = 0; t < h; ++t) acc = fw.add(acc, fw.mul(A[r * h + t], Bm[t * h + c]));
        C[r * h + c] = acc;
      }
  };
  for (std::uint64_t s = 0; s < lifts; ++s) {
    std::uint64_t t = s;
    for (std::size_t pos = hh; pos-- > 0;) {
      X[pos] = fw.add(Bl.a[pos], entry_vec[t % qN]);
      t /= qN;
    }
    for (const auto& g : gens) {
      matmul(g.L.a, X, T);
      matmul(T, g.phi_inv.a, Y);
      std::uint64_t idx = 0;
      for (std::size_t pos = 0; pos < hh; ++pos) {
        std::int64_t e = vec_entry[fw.sub(Y[pos], Bl.a[pos])];
        if (e < 0) throw std::logic_error("coordinate change left the fibre over the base display");
        idx = idx * qN + std::uint64_t(e);
      }
      unite(std::uint32_t(s), std::uint32_t(idx));
    }
  }

  for (std::uint64_t s = 0; s < lifts; ++s)
    if (find(std::uint32_t(s)) == s) res.representatives.push_back(s);
  res.class_count = res.representatives.size();
  res.expected = 1;
  for (std::size_t i = 0; i + 1 < h; ++i) res.expected *= q;

  // closed form: w0 of the last column of s is a k-multiple of w0(last column of B)
  std::vector<Element> col;
  for (std::size_t i = 0; i < h; ++i) col.push_back(wk.component(D.B(i, h - 1), 0));
  auto w0_coeff = [&](std::uint64_t entry) { return field_elem(entry % q); };  // s_0 = e * coefficient
  std::vector<Element> field_elems;
  for (std::uint64_t c = 0; c < q; ++c) field_elems.push_back(field_elem(c));
  auto in_subspace = [&](std::uint64_t s) {
    std::vector<Element> last(h);
    std::uint64_t t = s;
    for (std::size_t pos = hh; pos-- > 0;) {
      if (pos % h == h - 1) last[pos / h] = w0_coeff(t % qN);
      t /= qN;
    }
    for (const auto& lam : field_elems) {
      bool ok = true;
      for (std::size_t i = 0; i < h && ok; ++i) ok = last[i] == ke.mul(lam, lift_elem(col[i]));
      if (ok) return true;
    }
    return false;
  };
  std::uint32_t zero_root = find(0);
  res.closed_form_matches = true;
  for (std::uint64_t s = 0; s < lifts; ++s)
    if ((find(std::uint32_t(s)) == zero_root) != in_subspace(s)) {
      res.closed_form_matches = false;
      break;
    }

  for (std::uint64_t s : res.representatives) {
    Matrix<WittVector> M(h, h);
    std::uint64_t t = s;
    for (std::size_t pos = hh; pos-- > 0;) {
      M.a[pos] = fw.vector(entry_vec[t % qN]);
      t /= qN;
    }
    res.representative_matrices.push_back(std::move(M));
  }
  return res;
}

}  // namespace wdisp
