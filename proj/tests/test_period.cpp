#include <gtest/gtest.h>

#include "wdisp/deformation/deformation.hpp"
#include "wdisp/display/examples.hpp"
#include "wdisp/period/period.hpp"
#include "wdisp/ring/parse.hpp"

using namespace wdisp;

namespace {

Matrix<Element> parse_matrix(const Ring& R, std::vector<std::vector<const char*>> rows) {
  Matrix<Element> M(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) M(i, j) = parse_element(rows[i][j], R);
  return M;
}

}  // namespace

TEST(Psi, HeightTwoAndThree) {
  Ring R2 = period_ring(2, 4);
  EXPECT_EQ(psi_matrix(R2, 2, 3), parse_matrix(R2, {{"0", "1"}, {"3", "u1"}}));
  EXPECT_EQ(psi_matrix(R2, 2, 3, true), parse_matrix(R2, {{"0", "1"}, {"3", "0"}}));
  Ring R3 = period_ring(3, 4);
  auto Psi = psi_matrix(R3, 3, 5);
  EXPECT_EQ(Psi(2, 0), R3.from_integer(5));
  EXPECT_EQ(Psi(2, 1), parse_element("5*u2", R3));
  EXPECT_EQ(Psi(2, 2), R3.variable("u1"));
  for (std::size_t h : {2, 3, 4}) {
    Ring R = period_ring(h, 2);
    Element det = ring_det(R, psi_matrix(R, h, 3, true));
    Integer expected = ipow(3, h - 1);
    EXPECT_TRUE(det == R.from_integer(expected) || det == R.from_integer(-expected));
  }
}

TEST(Sections, BelowOrderPIsPsiTimesPsiBarInverse) {
  for (unsigned long p : {3ul, 5ul})
    for (std::size_t h : {2, 3}) {
      auto PA = horizontal_sections(h, unsigned(p), p);
      EXPECT_EQ(PA.A, expected_sections_mod_Jp(PA.ring, h));
      EXPECT_EQ(PA.A, ring_mul(PA.ring, PA.Psi, ring_inverse(PA.ring, PA.PsiBar)));
    }
}

TEST(Sections, UnipotentModJ) {
  auto PA = horizontal_sections(3, 10, 3);
  Ring R1 = period_ring(3, 1);
  EXPECT_EQ(truncate_order(PA.ring, PA.A, R1), ring_identity(R1, 3));
}

TEST(Sections, ResidualVanishesAtOrderPSquared) {
  for (unsigned long p : {2ul, 3ul}) {
    auto PA = horizontal_sections(2, unsigned(p * p), p);
    EXPECT_TRUE(PA.residual_zero);
  }
}

TEST(PeriodMap, LowOrder) {
  auto PA = horizontal_sections(2, 3, 3);
  EXPECT_EQ(period_map(PA), (std::vector<Element>{PA.ring.variable("u1"), PA.ring.one()}));
  auto PB = horizontal_sections(3, 2, 2);
  EXPECT_EQ(period_map(PB), (std::vector<Element>{PB.ring.variable("u2"), PB.ring.variable("u1"), PB.ring.one()}));
}

TEST(PeriodMap, MatchesHodgePointAfterRotation) {
  for (std::size_t h : {2, 3}) {
    unsigned long p = 3;
    auto PA = horizontal_sections(h, unsigned(p), p);
    auto lt = lubin_tate(h, p);
    const Ring& L = lt.witt.base();
    std::vector<Element> pt;
    for (const auto& x : projective_point(lt.witt, lt.display)) pt.push_back(parse_element(L.to_string(x), PA.ring));
    EXPECT_TRUE(projectively_equal(PA.ring, rotate_to_period_coordinates(pt), period_map(PA)));
  }
}
