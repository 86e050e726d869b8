#include <gtest/gtest.h>

#include <random>

#include "wdisp/dieudonne/dieudonne.hpp"
#include "wdisp/moduli/moduli.hpp"
#include "wdisp/selftest/criteria.hpp"

using namespace wdisp;

namespace {

Display<WittRing> swap_display(const WittRing& w, std::size_t N) {
  Matrix<WittVector> B(2, 2, w.zero(N));
  B(0, 1) = w.one(N);
  B(1, 0) = w.one(N);
  return make_display(w, 2, 1, B);
}

}  // namespace

TEST(Dieudonne, OperatorsOnBasis) {
  for (unsigned long p : {2ul, 3ul}) {
    WittRing w(Ring::modular(Integer(p)), p);
    const std::size_t N = 3;
    auto M = to_dieudonne(w, swap_display(w, N));
    std::vector<WittVector> e1{w.one(N), w.zero(N)}, e2{w.zero(N), w.one(N)};
    std::vector<WittVector> pe1{w.from_integer(Integer(p), N), w.zero(N)};
    EXPECT_EQ(dieudonne_F(w, M, e1), e2);
    EXPECT_EQ(dieudonne_F(w, M, e2), pe1);
    EXPECT_EQ(dieudonne_V(w, M, e1), e2);
    EXPECT_EQ(dieudonne_F(w, M, dieudonne_F(w, M, e1)), pe1);
    EXPECT_TRUE(check_fv(w, M));
  }
}

TEST(Dieudonne, FVEqualsPOnRandomDisplays) {
  WittRing w(Ring::finite_field(2, 2), 2);
  std::mt19937_64 rng(21);
  for (int t = 0; t < 10; ++t) {
    auto D = random_display(w, 2, 1, rng, selftest::witt_draw(w, 3));
    auto M = to_dieudonne(w, D);
    EXPECT_TRUE(check_fv(w, M));
    std::vector<WittVector> e{w.one(3), w.zero(3)};
    auto x = selftest::random_witt(w, 3, rng);
    auto lhs = dieudonne_F(w, M, {x, w.zero(3)});
    auto rhs = dieudonne_F(w, M, e);
    for (auto& r : rhs) r = w.mul(w.frob(x), r);
    EXPECT_EQ(lhs, rhs);
  }
}

TEST(Dieudonne, DualIsTransposeWithFVSwapped) {
  for (unsigned long p : {2ul, 3ul, 5ul}) {
    WittRing w(Ring::modular(Integer(p)), p);
    EXPECT_TRUE(dual_matches_transpose(w, swap_display(w, 3)));
  }
  WittRing w9(Ring::finite_field(3, 2), 3);
  std::mt19937_64 rng(22);
  for (int t = 0; t < 5; ++t) EXPECT_TRUE(dual_matches_transpose(w9, random_display(w9, 3, 1, rng, selftest::witt_draw(w9, 2))));
}

TEST(Dieudonne, Isomorphisms) {
  WittRing w(Ring::modular(3), 3);
  std::mt19937_64 rng(23);
  auto D = random_display(w, 2, 1, rng, selftest::witt_draw(w, 2));
  auto M = to_dieudonne(w, D);
  auto I = witt_identity(w, 2, 2);
  EXPECT_TRUE(dieudonne_isomorphic_under_base_change(w, M, M, I));

  Matrix<WittVector> P(2, 2, w.zero(2));
  P(0, 1) = w.one(2);
  P(1, 0) = w.one(2);
  DieudonneModule<WittRing> Mp{2, witt_mul(w, witt_mul(w, P, M.F), P), witt_mul(w, witt_mul(w, P, M.V), P)};
  EXPECT_TRUE(dieudonne_isomorphic_under_base_change(w, M, Mp, P));

  auto S = to_dieudonne(w, swap_display(w, 2));
  Matrix<WittVector> g = I;
  g(1, 1) = w.teich(w.base().from_integer(2), 2);
  EXPECT_FALSE(dieudonne_isomorphic_under_base_change(w, S, S, g));
}

TEST(Dieudonne, NeedsFiniteField) {
  auto lt = lubin_tate(2);
  EXPECT_THROW(to_dieudonne(lt.witt, lt.display), DomainError);
}
