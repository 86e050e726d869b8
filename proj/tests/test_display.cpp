#include <gtest/gtest.h>

#include <random>

#include "wdisp/display/examples.hpp"
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

/// [[0, 1], [1, [u1]]] over the given ring.
Display<WittRing> h2_display(const WittRing& w, std::size_t N) {
  Matrix<WittVector> B(2, 2, w.zero(N));
  B(0, 1) = w.one(N);
  B(1, 0) = w.one(N);
  B(1, 1) = w.teich(w.base().variable("u1"), N);
  return make_display(w, 2, 1, B);
}

}  // namespace

TEST(Display, AcceptsLubinTateMatrices) {
  for (std::size_t h : {2, 3, 4}) {
    auto lt = lubin_tate(h, 2);
    EXPECT_EQ(lt.display.h, h);
    EXPECT_EQ(lt.display.d, h - 1);
  }
  WittRing w(lubin_tate_ring(2, 3, 4), 3);
  EXPECT_NO_THROW(h2_display(w, 2));
}

TEST(Display, RejectsSingularMatrix) {
  WittRing w(Ring::modular(3), 3);
  Matrix<WittVector> B(2, 2, w.zero(2));
  B(0, 0) = w.one(2);
  B(0, 1) = w.one(2);
  EXPECT_THROW(make_display(w, 2, 1, B), DomainError);
  EXPECT_THROW(make_display(w, 2, 3, witt_identity(w, 2, 2)), DomainError);
}

TEST(Display, FrobeniusOnBasis) {
  for (unsigned long p : {2ul, 3ul, 5ul}) {
    WittRing w(Ring::modular(Integer(p)), p);
    auto D = swap_display(w, 3);
    std::vector<WittVector> e1{w.one(3), w.zero(3)}, e2{w.zero(3), w.one(3)}, zero{w.zero(3), w.zero(3)};
    EXPECT_EQ(apply_F(w, D, e1), e2);
    EXPECT_EQ(apply_F(w, D, e2), (std::vector<WittVector>{w.from_integer(Integer(p), 3), w.zero(3)}));
    EXPECT_EQ(apply_F(w, D, zero), zero);
    auto vinv = apply_Vinv(w, D, e2);
    for (std::size_t i = 0; i < 2; ++i) EXPECT_TRUE(selftest::same_at_common_length(w, vinv[i], e1[i]));
    auto vinv0 = apply_Vinv(w, D, zero);
    for (const auto& x : vinv0) EXPECT_TRUE(w.is_zero(x));
  }
}

TEST(Display, VinvOfVerschiebungTimesE1) {
  WittRing w(Ring::finite_field(3, 2), 3);
  auto D = swap_display(w, 3);
  std::mt19937_64 rng(11);
  for (int t = 0; t < 20; ++t) {
    auto x = selftest::random_witt(w, 3, rng);
    auto lhs = apply_Vinv(w, D, {w.versch(x), w.zero(3)});
    auto rhs = apply_F(w, D, {w.one(3), w.zero(3)});
    for (auto& r : rhs) r = w.mul(x, r);
    for (std::size_t i = 0; i < 2; ++i) EXPECT_TRUE(selftest::same_at_common_length(w, lhs[i], rhs[i]));
  }
}

TEST(Display, IdentityChange) {
  auto lt = lubin_tate(3);
  const WittRing& w = lt.witt;
  auto res = change_of_coords(w, lt.display, identity_change(w, 3, 2, lt.length + 1));
  EXPECT_TRUE(witt_matrix_equal(w, res.display.B, lt.display.B));
  EXPECT_EQ(res.factor, ring_identity(w.base(), 1));
}

TEST(Display, ZetaActionRestoresLubinTate) {
  for (std::size_t h : {2, 3, 4}) {
    auto z = zeta_action(h, 3);
    const WittRing& w = z.original.witt;
    auto res = change_of_coords(w, z.pulled, z.change);
    EXPECT_TRUE(witt_matrix_equal(w, res.display.B, z.original.display.B)) << "h=" << h;
    EXPECT_EQ(res.factor(0, 0), z.zeta);
  }
}

TEST(Display, CompositionMatchesSequentialChanges) {
  WittRing w(Ring::modular(5), 5);
  std::mt19937_64 rng(12);
  auto draw = selftest::witt_draw(w, 2);
  for (int t = 0; t < 10; ++t) {
    auto D = random_display(w, 2, 1, rng, draw);
    auto C1 = random_change(w, 2, 1, rng, draw), C2 = random_change(w, 2, 1, rng, draw);
    auto seq = change_of_coords(w, change_of_coords(w, D, C1).display, C2);
    auto once = change_of_coords(w, D, compose_changes(w, C2, C1));
    EXPECT_TRUE(witt_matrix_equal(w, seq.display.B, once.display.B));
  }
}

TEST(Display, RejectsNonInvertibleChange) {
  auto lt = lubin_tate(2);
  const WittRing& w = lt.witt;
  auto C = identity_change(w, 2, 1, lt.length);
  C.e(0, 0) = w.teich(w.base().variable("u1"), lt.length);
  EXPECT_THROW(change_of_coords(w, lt.display, C), DomainError);
}

TEST(Nilpotence, HeightTwoOverTruncatedPolynomials) {
  for (unsigned long p : {2ul, 3ul}) {
    Ring R = Ring::quotient(Ring::polynomial(Ring::modular(ipow(p, 2)), {"u1"}), {"u1"}, 4);
    WittRing w(R, p);
    EXPECT_EQ(is_nilpotent(w, h2_display(w, 2)).kind, Nilpotence::Kind::Nilpotent);
  }
}

TEST(Nilpotence, ZeroCornerAndUnitCorner) {
  WittRing w(Ring::modular(3), 3);
  auto n = is_nilpotent(w, swap_display(w, 2));
  EXPECT_EQ(n, (Nilpotence{Nilpotence::Kind::Nilpotent, 0}));
  auto lt = lubin_tate(2);
  EXPECT_EQ(is_nilpotent(lt.witt, make_display(lt.witt, 2, 1, witt_identity(lt.witt, 2, 2))).kind,
            Nilpotence::Kind::NotNilpotent);
}

TEST(Duality, SwapsDimensionAndIsInvolutive) {
  auto lt = lubin_tate(3);
  const WittRing& w = lt.witt;
  auto Dt = dual(w, lt.display);
  EXPECT_EQ(Dt.h, 3u);
  EXPECT_EQ(Dt.d, 1u);
  auto Dtt = dual(w, Dt);
  EXPECT_EQ(Dtt.d, 2u);
  auto exhibited = change_of_coords(w, Dtt, identity_change(w, 3, 2, lt.length + 1));
  EXPECT_TRUE(witt_matrix_equal(w, exhibited.display.B, lt.display.B));
}

TEST(Duality, PairingCertificate) {
  for (std::size_t h : {2, 3}) {
    auto lt = lubin_tate(h);
    const WittRing& w = lt.witt;
    EXPECT_EQ(dual_pairing_failure(w, lt.display, {w.one(lt.length)}), "");
  }
}

TEST(ReduceH2, AlreadyReducedIsFixed) {
  WittRing w(lubin_tate_ring(2, 2, 4), 2);
  auto D = h2_display(w, 2);
  auto [E, C] = reduce_h2(w, D);
  EXPECT_TRUE(witt_matrix_equal(w, E.B, D.B));
  EXPECT_TRUE(changes_equal(w, C, identity_change(w, 2, 1, 2)));
}

TEST(ReduceH2, RandomUnitCorner) {
  for (unsigned long p : {2ul, 3ul}) {
    WittRing w(Ring::modular(Integer(p)), p);
    std::mt19937_64 rng(13 + p);
    auto draw = selftest::witt_draw(w, 2);
    for (int t = 0; t < 10; ++t) {
      Display<WittRing> D = random_display(w, 2, 1, rng, draw);
      if (!w.is_unit(D.B(0, 1))) continue;
      auto [E, C] = reduce_h2(w, D);
      EXPECT_TRUE(w.is_zero(E.B(0, 0)));
      EXPECT_EQ(E.B(0, 1), w.one(2));
      EXPECT_TRUE(witt_matrix_equal(w, change_of_coords(w, D, C).display.B, E.B));
    }
  }
}

TEST(Examples, CorpusIsAddressable) {
  for (const auto& name : example_names()) EXPECT_NO_THROW(example_display(name)) << name;
  EXPECT_THROW(example_display("lubin-tate-h9"), DomainError);
}
