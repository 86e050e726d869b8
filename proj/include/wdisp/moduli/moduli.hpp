#pragma once

#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "wdisp/display/display.hpp"
#include "wdisp/witt/finite.hpp"
#include "wdisp/witt/witt.hpp"

namespace wdisp {

/// Generator names: beta_n_ij for the matrix form, phi_n_ij for the change
/// (phi_0_ij absent on the upper-right block, where (phi_n)_ij = b_{n-1}).
inline std::string generator_name(const std::string& stem, std::size_t n, std::size_t i, std::size_t j) {
  return stem + "_" + std::to_string(n) + "_" + std::to_string(i + 1) + std::to_string(j + 1);
}

inline std::vector<std::string> beta_generators(std::size_t h, std::size_t N) {
  std::vector<std::string> out;
  for (std::size_t n = 0; n < N; ++n)
    for (std::size_t i = 0; i < h; ++i)
      for (std::size_t j = 0; j < h; ++j) out.push_back(generator_name("beta", n, i, j));
  return out;
}

inline std::vector<std::string> change_generators(const std::string& stem, std::size_t h, std::size_t N) {
  std::vector<std::string> out;
  std::size_t d = h - 1;
  for (std::size_t n = 0; n <= N; ++n)
    for (std::size_t i = 0; i < h; ++i)
      for (std::size_t j = 0; j < h; ++j)
        if (!(n == 0 && i < d && j >= d)) out.push_back(generator_name(stem, n, i, j));
  return out;
}

/// Generic coordinate change over `w` in the variables stem_n_ij: a, c, e
/// with N+1 components, b with N.
inline CoordinateChange<WittRing> generic_change(const WittRing& w, const std::string& stem, std::size_t h, std::size_t N) {
  const Ring& R = w.base();
  std::size_t d = h - 1;
  auto entry = [&](std::size_t i, std::size_t j) {
    bool upper_right = i < d && j >= d;
    std::vector<Element> comps;
    for (std::size_t n = upper_right ? 1 : 0; n <= N; ++n) comps.push_back(R.variable(generator_name(stem, n, i, j)));
    return w.make(comps);
  };
  CoordinateChange<WittRing> C;
  C.a = Matrix<WittVector>(d, d);
  C.b = Matrix<WittVector>(d, h - d);
  C.c = Matrix<WittVector>(h - d, d);
  C.e = Matrix<WittVector>(h - d, h - d);
  for (std::size_t i = 0; i < h; ++i)
    for (std::size_t j = 0; j < h; ++j) {
      if (i < d && j < d) C.a(i, j) = entry(i, j);
      else if (i < d) C.b(i, j - d) = entry(i, j);
      else if (j < d) C.c(i - d, j) = entry(i, j);
      else C.e(i - d, j - d) = entry(i, j);
    }
  return C;
}

inline Matrix<WittVector> generic_matrix_form(const WittRing& w, std::size_t h, std::size_t N) {
  const Ring& R = w.base();
  Matrix<WittVector> B(h, h);
  for (std::size_t i = 0; i < h; ++i)
    for (std::size_t j = 0; j < h; ++j) {
      std::vector<Element> comps;
      for (std::size_t n = 0; n < N; ++n) comps.push_back(R.variable(generator_name("beta", n, i, j)));
      B(i, j) = w.make(comps);
    }
  return B;
}

/// Reads a change back off as generator values (phi_n_ij -> element).
inline std::vector<std::pair<std::string, Element>> change_assignment(const WittRing& w, const CoordinateChange<WittRing>& C,
                                                                       const std::string& stem, std::size_t h, std::size_t N) {
  std::vector<std::pair<std::string, Element>> out;
  std::size_t d = h - 1;
  for (std::size_t n = 0; n <= N; ++n)
    for (std::size_t i = 0; i < h; ++i)
      for (std::size_t j = 0; j < h; ++j) {
        bool upper_right = i < d && j >= d;
        if (n == 0 && upper_right) continue;
        const WittVector& x = upper_right ? C.b(i, j - d) : i < d ? C.a(i, j) : j < d ? C.c(i - d, j) : C.e(i - d, j - d);
        std::size_t k = upper_right ? n - 1 : n;
        out.emplace_back(generator_name(stem, n, i, j), k < x.size() ? x.c[k] : w.base().zero());
      }
  return out;
}

using Assignment = std::vector<std::pair<std::string, Element>>;

/// Truncated presentation of the Hopf algebroid (A, Gamma) at height 2 and
/// Witt length N, with coefficients in Z/p^K.
struct HopfPresentation {
  unsigned long p = 0;
  std::size_t N = 0, h = 0;
  unsigned K = 0;
  Ring A;       ///< Z/p^K[beta]
  Ring Gamma;   ///< A[phi] with phi_0_11, phi_0_22 inverted (det phi_0 = phi_0_11 phi_0_22)
  Ring Gamma2;  ///< Gamma tensor_A Gamma: beta, phi (first change), psi (second change)
  std::vector<std::string> beta, phi;
  std::vector<std::string> relations;
  Assignment eta_L, eta_R;  ///< beta -> Gamma
  Assignment epsilon;       ///< phi -> A
  Assignment delta;         ///< phi -> Gamma2: the composite "phi, then psi"
  Assignment inverse;       ///< beta, phi -> Gamma
};

inline void check_term_budget(const Ring& R, const Element& x, std::size_t limit) {
  if (x.terms.size() > limit)
    throw ResourceError("symbolic expression has " + std::to_string(x.terms.size()) + " terms (limit " +
                        std::to_string(limit) + ") in " + R.to_string());
}

inline Ring presentation_ring(unsigned long p, unsigned K, const std::vector<std::string>& vars,
                              const std::vector<std::string>& inverted) {
  return Ring::polynomial(Ring::modular(ipow(p, K)), vars, inverted);
}

inline HopfPresentation build_presentation(unsigned long p, std::size_t N, std::size_t h = 2, unsigned K = 0,
                                           std::size_t term_limit = 200000) {
  if (!is_prime(p)) throw DomainError("p must be prime, got " + std::to_string(p));
  if (h != 2) throw DomainError("the symbolic presentation is available for h = 2; use numeric specialization for h = " + std::to_string(h));
  if (N < 1) throw DomainError("Witt length must be at least 1");
  if (K == 0) K = unsigned(N + 1);
  HopfPresentation P;
  P.p = p;
  P.N = N;
  P.h = h;
  P.K = K;
  P.beta = beta_generators(h, N);
  P.phi = change_generators("phi", h, N);
  auto psi = change_generators("psi", h, N);
  std::vector<std::string> gvars = P.beta, g2vars = P.beta;
  gvars.insert(gvars.end(), P.phi.begin(), P.phi.end());
  g2vars.insert(g2vars.end(), P.phi.begin(), P.phi.end());
  g2vars.insert(g2vars.end(), psi.begin(), psi.end());
  P.A = presentation_ring(p, K, P.beta, {});
  P.Gamma = presentation_ring(p, K, gvars, {"phi_0_11", "phi_0_22"});
  P.Gamma2 = presentation_ring(p, K, g2vars, {"phi_0_11", "phi_0_22", "psi_0_11", "psi_0_22"});
  P.relations = {std::to_string(p) + "^" + std::to_string(K) + " = 0", "det(beta_0) invertible",
                 "det(phi_0) = phi_0_11*phi_0_22 invertible", "phi_0_12 = 0"};

  WittRing wg(P.Gamma, p);
  auto B = generic_matrix_form(wg, h, N);
  auto C = generic_change(wg, "phi", h, N);
  auto moved = change_of_coords(wg, Display<WittRing>{h, h - 1, B}, C);
  for (std::size_t n = 0; n < N; ++n)
    for (std::size_t i = 0; i < h; ++i)
      for (std::size_t j = 0; j < h; ++j) {
        std::string name = generator_name("beta", n, i, j);
        const Element& x = moved.display.B(i, j).c.at(n);
        check_term_budget(P.Gamma, x, term_limit);
        P.eta_L.emplace_back(name, P.Gamma.variable(name));
        P.eta_R.emplace_back(name, x);
        P.inverse.emplace_back(name, x);
      }
  for (const auto& name : P.phi) {
    bool unit = name == "phi_0_11" || name == "phi_0_22";
    P.epsilon.emplace_back(name, unit ? P.A.one() : P.A.zero());
  }

  WittRing w2(P.Gamma2, p);
  auto C1 = generic_change(w2, "phi", h, N);
  auto C2 = generic_change(w2, "psi", h, N);
  auto comp = compose_changes(w2, C2, C1);
  for (auto& [name, x] : change_assignment(w2, comp, "phi", h, N)) {
    check_term_budget(P.Gamma2, x, term_limit);
    P.delta.emplace_back(name, std::move(x));
  }

  auto inv = inverse_change(wg, C);
  for (auto& [name, x] : change_assignment(wg, inv, "phi", h, N)) {
    check_term_budget(P.Gamma, x, term_limit);
    P.inverse.emplace_back(name, std::move(x));
  }
  return P;
}

/// Applies an assignment given by generator name; unlisted variables of
/// `from` map to the same-named variable of `to`.
inline Element substitute_named(const Ring& from, const Element& x, const std::map<std::string, Element>& images,
                                const Ring& to) {
  std::vector<Element> imgs;
  for (const auto& v : from.var_names()) {
    auto it = images.find(v);
    imgs.push_back(it != images.end() ? it->second : to.variable(v));
  }
  std::vector<const Element*> ptrs;
  for (const auto& e : imgs) ptrs.push_back(&e);
  return from.evaluate(x, ptrs, to);
}

struct SymbolicAxioms {
  bool counit_eta_R = false;   ///< epsilon(eta_R(beta)) = beta
  bool counit_left = false;    ///< composite with the identity first is psi
  bool counit_right = false;   ///< composite with the identity second is phi
  bool coassociative = false;  ///< (Delta x 1) Delta = (1 x Delta) Delta
  bool right_unit = false;     ///< Delta(eta_R(beta)) = eta_R applied twice
  bool antipode = false;       ///< composite of phi with its inverse is the identity
  bool all() const { return counit_eta_R && counit_left && counit_right && coassociative && right_unit && antipode; }
};

inline SymbolicAxioms check_symbolic_axioms(const HopfPresentation& P) {
  SymbolicAxioms ax;
  const unsigned long p = P.p;
  std::map<std::string, Element> eps;
  for (const auto& [name, v] : P.epsilon) eps.emplace(name, v);

  ax.counit_eta_R = true;
  for (const auto& [name, x] : P.eta_R)
    if (substitute_named(P.Gamma, x, eps, P.A) != P.A.variable(name)) ax.counit_eta_R = false;

  // identity images for phi or psi inside Gamma2, renaming the survivor to phi
  auto identity_on = [&](const std::string& stem) {
    std::map<std::string, Element> m;
    for (const auto& name : change_generators(stem, P.h, P.N)) {
      bool unit = name == stem + "_0_11" || name == stem + "_0_22";
      m.emplace(name, unit ? P.Gamma.one() : P.Gamma.zero());
    }
    return m;
  };
  auto id_phi = identity_on("phi"), id_psi = identity_on("psi");
  for (const auto& name : change_generators("psi", P.h, P.N))
    id_phi.emplace(name, P.Gamma.variable("phi" + name.substr(3)));
  ax.counit_left = ax.counit_right = true;
  for (const auto& [name, x] : P.delta) {
    if (substitute_named(P.Gamma2, x, id_phi, P.Gamma) != P.Gamma.variable(name)) ax.counit_left = false;
    if (substitute_named(P.Gamma2, x, id_psi, P.Gamma) != P.Gamma.variable(name)) ax.counit_right = false;
  }

  // three composable changes phi, psi, chi
  std::vector<std::string> g3vars = P.beta;
  for (const auto* stem : {"phi", "psi", "chi"}) {
    auto names = change_generators(stem, P.h, P.N);
    g3vars.insert(g3vars.end(), names.begin(), names.end());
  }
  Ring G3 = presentation_ring(p, P.K, g3vars, {"phi_0_11", "phi_0_22", "psi_0_11", "psi_0_22", "chi_0_11", "chi_0_22"});
  auto rename = [&](const std::string& from, const std::string& to) {
    std::map<std::string, Element> m;
    for (const auto& name : change_generators(from, P.h, P.N)) m.emplace(name, G3.variable(to + name.substr(from.size())));
    return m;
  };
  // inner composites as images in G3
  std::map<std::string, Element> first, second;  // (psi after phi), (chi after psi)
  {
    auto m1 = rename("psi", "psi");
    auto m2 = rename("phi", "psi");
    for (const auto& [k, v] : rename("psi", "chi")) m2[k] = v;
    for (const auto& [name, x] : P.delta) {
      first.emplace(name, substitute_named(P.Gamma2, x, m1, G3));
      second.emplace(name, substitute_named(P.Gamma2, x, m2, G3));
    }
  }
  ax.coassociative = true;
  for (const auto& [name, x] : P.delta) {
    std::map<std::string, Element> left = first, right;  // chi after (psi after phi); (chi after psi) after phi
    for (const auto& [k, v] : rename("psi", "chi")) left[k] = v;
    for (const auto& [k, v] : second) right.emplace("psi" + k.substr(3), v);
    if (substitute_named(P.Gamma2, x, left, G3) != substitute_named(P.Gamma2, x, right, G3)) ax.coassociative = false;
  }

  // eta_R of the composite equals eta_R(psi) applied to eta_R(phi)
  std::map<std::string, Element> er_first, er_psi, delta_map;
  for (const auto& [name, x] : P.eta_R) er_first.emplace(name, substitute_named(P.Gamma, x, {}, P.Gamma2));
  for (const auto& name : P.phi) er_psi.emplace(name, P.Gamma2.variable("psi" + name.substr(3)));
  for (const auto& [k, v] : er_first) er_psi.emplace(k, v);
  for (const auto& [name, x] : P.delta) delta_map.emplace(name, x);
  ax.right_unit = true;
  for (const auto& [name, x] : P.eta_R)
    if (substitute_named(P.Gamma, x, er_psi, P.Gamma2) != substitute_named(P.Gamma, x, delta_map, P.Gamma2))
      ax.right_unit = false;

  // antipode: psi := inverse(phi) composed after phi is the identity
  std::map<std::string, Element> inv_as_psi;
  for (const auto& [name, x] : P.inverse)
    if (name.rfind("phi", 0) == 0) inv_as_psi.emplace("psi" + name.substr(3), x);
  ax.antipode = true;
  for (const auto& [name, x] : P.delta) {
    bool unit = name == "phi_0_11" || name == "phi_0_22";
    if (substitute_named(P.Gamma2, x, inv_as_psi, P.Gamma) != (unit ? P.Gamma.one() : P.Gamma.zero())) ax.antipode = false;
  }
  return ax;
}

/// eta_R((beta_0)_hh) = unit * (beta_0)_hh + p * rest, split termwise:
/// p-divisible coefficients go to `rest`, the others must be divisible by
/// (beta_0)_hh.
struct InvariantIdealCertificate {
  Element image, unit, rest, one_form_factor;
  bool unit_is_unit = false, identity_holds = false;
};

inline InvariantIdealCertificate invariant_ideal_certificate(const HopfPresentation& P) {
  const Ring& G = P.Gamma;
  std::string hh = generator_name("beta", 0, P.h - 1, P.h - 1);
  std::size_t idx = G.offset() + G.var_index(hh);
  InvariantIdealCertificate cert;
  for (const auto& [name, x] : P.eta_R)
    if (name == hh) cert.image = x;
  std::vector<Term> unit_terms, rest_terms;
  for (const auto& t : cert.image.terms) {
    if (divisible(t.c, Integer(P.p))) {
      rest_terms.push_back(Term{t.m, exact_div(t.c, Integer(P.p))});
    } else if (t.m[idx] > 0) {
      Term u = t;
      u.m[idx] -= 1;
      unit_terms.push_back(std::move(u));
    } else {
      throw std::logic_error("invariant ideal certificate: term outside (p, beta_0_hh)");
    }
  }
  cert.unit = G.make(std::move(unit_terms));
  cert.rest = G.make(std::move(rest_terms));
  cert.unit_is_unit = G.is_unit(cert.unit);
  Element rebuilt = G.add(G.mul(cert.unit, G.variable(hh)), G.scale(cert.rest, Integer(P.p)));
  cert.identity_holds = rebuilt == cert.image;
  cert.one_form_factor = G.variable("phi_0_22");
  return cert;
}

// ---- numeric specialization over finite fields ----

struct NumericAxioms {
  std::size_t trials = 0;
  std::size_t counit = 0, composition = 0, coassociativity = 0, antipode = 0, factor = 0;
  bool all() const {
    return counit == trials && composition == trials && coassociativity == trials && antipode == trials && factor == trials;
  }
};

template <WittContext W>
Matrix<typename W::Vec> random_witt_matrix(const W& w, std::size_t r, std::size_t c, std::mt19937_64& rng,
                                           const std::function<typename W::Vec(std::mt19937_64&)>& draw) {
  Matrix<typename W::Vec> M(r, c, w.zero(0));
  for (auto& x : M.a) x = draw(rng);
  return M;
}

/// Random change with invertible diagonal blocks (so phi_0 is invertible).
template <WittContext W>
CoordinateChange<W> random_change(const W& w, std::size_t h, std::size_t d, std::mt19937_64& rng,
                                  const std::function<typename W::Vec(std::mt19937_64&)>& draw) {
  const Ring& R = w.base();
  CoordinateChange<W> C;
  auto invertible = [&](std::size_t n) {
    for (;;) {
      auto M = random_witt_matrix(w, n, n, rng, draw);
      if (R.is_unit(ring_det(R, witt_w0(w, M)))) return M;
    }
  };
  C.a = invertible(d);
  C.e = invertible(h - d);
  C.b = random_witt_matrix(w, d, h - d, rng, draw);
  C.c = random_witt_matrix(w, h - d, d, rng, draw);
  return C;
}

template <WittContext W>
Display<W> random_display(const W& w, std::size_t h, std::size_t d, std::mt19937_64& rng,
                          const std::function<typename W::Vec(std::mt19937_64&)>& draw) {
  for (;;) {
    auto B = random_witt_matrix(w, h, h, rng, draw);
    if (w.base().is_unit(ring_det(w.base(), witt_w0(w, B)))) return Display<W>{h, d, std::move(B)};
  }
}

/// Groupoid axioms on random points of W_N(F_p) for displays of dimension h-1.
inline NumericAxioms numeric_axioms(unsigned long p, std::size_t h, std::size_t N, std::size_t trials, std::uint64_t seed) {
  FiniteWittRing fw(Ring::modular(Integer(p)), p, N, 1 << 12);
  std::mt19937_64 rng(seed);
  std::function<FiniteWittRing::Vec(std::mt19937_64&)> draw = [&](std::mt19937_64& g) {
    return FiniteWittRing::Vec(g() % fw.size());
  };
  const std::size_t d = h - 1;
  NumericAxioms ax;
  ax.trials = trials;
  auto id = identity_change(fw, h, d, N);
  const Ring& R = fw.base();
  for (std::size_t t = 0; t < trials; ++t) {
    auto D = random_display(fw, h, d, rng, draw);
    auto C1 = random_change(fw, h, d, rng, draw);
    auto C2 = random_change(fw, h, d, rng, draw);
    auto C3 = random_change(fw, h, d, rng, draw);
    if (witt_matrix_equal(fw, change_of_coords(fw, D, id).display.B, D.B)) ++ax.counit;
    auto r1 = change_of_coords(fw, D, C1);
    auto r12 = change_of_coords(fw, r1.display, C2);
    auto c21 = compose_changes(fw, C2, C1);
    auto r21 = change_of_coords(fw, D, c21);
    if (witt_matrix_equal(fw, r12.display.B, r21.display.B)) ++ax.composition;
    if (changes_equal(fw, compose_changes(fw, C3, c21), compose_changes(fw, compose_changes(fw, C3, C2), C1)))
      ++ax.coassociativity;
    auto inv = inverse_change(fw, C1);
    if (changes_equal(fw, compose_changes(fw, inv, C1), id) && changes_equal(fw, compose_changes(fw, C1, inv), id) &&
        witt_matrix_equal(fw, change_of_coords(fw, r1.display, inv).display.B, D.B))
      ++ax.antipode;
    if (ring_mul(R, r12.factor, r1.factor) == r21.factor) ++ax.factor;
  }
  return ax;
}

}  // namespace wdisp
