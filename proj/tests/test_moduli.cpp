#include <gtest/gtest.h>

#include <random>

#include "wdisp/moduli/moduli.hpp"

using namespace wdisp;

namespace {

using Values = std::map<std::string, Element>;

/// Numeric change with the same indexing as generic_change.
CoordinateChange<WittRing> change_from_values(const WittRing& w, const Values& v, const std::string& stem, std::size_t N) {
  const std::size_t d = 1;
  auto entry = [&](std::size_t i, std::size_t j) {
    bool upper_right = i < d && j >= d;
    std::vector<Element> comps;
    for (std::size_t n = upper_right ? 1 : 0; n <= N; ++n) comps.push_back(v.at(generator_name(stem, n, i, j)));
    return w.make(comps);
  };
  CoordinateChange<WittRing> C{Matrix<WittVector>(1, 1), Matrix<WittVector>(1, 1), Matrix<WittVector>(1, 1),
                               Matrix<WittVector>(1, 1)};
  C.a(0, 0) = entry(0, 0);
  C.b(0, 0) = entry(0, 1);
  C.c(0, 0) = entry(1, 0);
  C.e(0, 0) = entry(1, 1);
  return C;
}

Values random_values(const Ring& R, const std::vector<std::string>& names, unsigned long p, std::mt19937_64& rng) {
  Values v;
  std::uint64_t m = R.characteristic().get_ui();
  for (const auto& n : names) {
    std::uint64_t x = rng() % m;
    if (n.size() > 4 && (n.substr(n.size() - 5) == "_0_11" || n.substr(n.size() - 5) == "_0_22") && x % p == 0) ++x;
    v.emplace(n, R.from_integer(Integer((unsigned long)x)));
  }
  return v;
}

}  // namespace

TEST(Moduli, GeneratorCounts) {
  for (std::size_t N : {1, 2, 3}) {
    EXPECT_EQ(beta_generators(2, N).size(), 4 * N);
    EXPECT_EQ(beta_generators(3, N).size(), 9 * N);
  }
  auto P = build_presentation(2, 2);
  EXPECT_EQ(P.beta.size(), 8u);
  EXPECT_EQ(P.K, 3u);
}

TEST(Moduli, SymbolicAxiomsAtLengthTwo) {
  auto ax = check_symbolic_axioms(build_presentation(2, 2));
  EXPECT_TRUE(ax.counit_eta_R);
  EXPECT_TRUE(ax.counit_left);
  EXPECT_TRUE(ax.counit_right);
  EXPECT_TRUE(ax.coassociative);
  EXPECT_TRUE(ax.right_unit);
  EXPECT_TRUE(ax.antipode);
}

TEST(Moduli, OnlyHeightTwoIsSymbolic) { EXPECT_THROW(build_presentation(2, 2, 3), DomainError); }

TEST(Moduli, SpecializationMatchesDirectComputation) {
  const unsigned long p = 3;
  const std::size_t N = 1;
  auto P = build_presentation(p, N);
  Ring Z = Ring::modular(ipow(p, P.K));
  WittRing w(Z, p);
  std::mt19937_64 rng(31);
  for (int t = 0; t < 5; ++t) {
    Values beta = random_values(Z, P.beta, p, rng), phi = random_values(Z, P.phi, p, rng);
    Values psi = random_values(Z, change_generators("psi", 2, N), p, rng);
    beta["beta_0_11"] = Z.one();
    beta["beta_0_12"] = Z.one();
    beta["beta_0_21"] = Z.one();
    beta["beta_0_22"] = Z.zero();
    Values all = beta;
    all.insert(phi.begin(), phi.end());
    all.insert(psi.begin(), psi.end());

    Matrix<WittVector> B(2, 2);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) {
        std::vector<Element> c;
        for (std::size_t n = 0; n < N; ++n) c.push_back(beta.at(generator_name("beta", n, i, j)));
        B(i, j) = w.make(c);
      }
    auto C1 = change_from_values(w, phi, "phi", N);
    auto C2 = change_from_values(w, psi, "psi", N);
    auto moved = change_of_coords(w, Display<WittRing>{2, 1, B}, C1);
    for (const auto& [name, x] : P.eta_R) {
      std::size_t n = std::stoul(name.substr(5, 1)), i = std::size_t(name[7] - '1'), j = std::size_t(name[8] - '1');
      EXPECT_EQ(P.Gamma.substitute(x, all, Z), moved.display.B(i, j).c.at(n)) << name;
    }
    auto comp = compose_changes(w, C2, C1);
    for (const auto& [name, value] : change_assignment(w, comp, "phi", 2, N)) {
      for (const auto& [dname, x] : P.delta)
        if (dname == name) EXPECT_EQ(P.Gamma2.substitute(x, all, Z), value) << name;
    }
  }
}

TEST(Moduli, InvariantIdealCertificate) {
  for (unsigned long p : {2ul, 3ul}) {
    auto P = build_presentation(p, 2);
    auto cert = invariant_ideal_certificate(P);
    const Ring& G = P.Gamma;
    EXPECT_TRUE(cert.unit_is_unit);
    EXPECT_TRUE(cert.identity_holds);
    EXPECT_EQ(cert.unit, G.pow(G.variable("phi_0_22"), p - 1));

    Values id;
    for (const auto& n : P.beta) id.emplace(n, P.A.variable(n));
    for (const auto& n : P.phi) id.emplace(n, n == "phi_0_11" || n == "phi_0_22" ? P.A.one() : P.A.zero());
    EXPECT_EQ(G.substitute(cert.unit, id, P.A), P.A.one());

    Ring F = Ring::finite_field(p, 2);
    Element zeta = F.generator();
    Values z;
    for (const auto& n : P.beta) z.emplace(n, F.zero());
    for (const auto& n : P.phi) z.emplace(n, F.zero());
    z["phi_0_11"] = F.pow(zeta, p);
    z["phi_0_22"] = zeta;
    EXPECT_EQ(G.substitute(cert.one_form_factor, z, F), zeta);
    EXPECT_EQ(G.substitute(cert.unit, z, F), F.pow(zeta, p - 1));
  }
}

TEST(Moduli, NumericAxiomsOverF3) {
  auto ax = numeric_axioms(3, 2, 2, 20, 5);
  EXPECT_TRUE(ax.all());
  EXPECT_EQ(ax.composition, 20u);
}
