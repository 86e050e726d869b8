#include <gtest/gtest.h>

#include "wdisp/deformation/deformation.hpp"
#include "wdisp/display/examples.hpp"
#include "wdisp/period/period.hpp"
#include "wdisp/ring/parse.hpp"

using namespace wdisp;

TEST(ProjectivePoint, LubinTate) {
  for (std::size_t h : {2, 3, 4}) {
    auto lt = lubin_tate(h);
    const Ring& R = lt.witt.base();
    auto pt = projective_point(lt.witt, lt.display);
    ASSERT_EQ(pt.size(), h);
    EXPECT_EQ(pt[0], R.one());
    for (std::size_t i = 1; i < h; ++i) EXPECT_EQ(pt[i], R.variable("u" + std::to_string(h - i)));
  }
}

TEST(ProjectivePoint, SwapDisplay) {
  auto inst = lubin_tate_fiber(2, 3);
  auto pt = projective_point(inst.witt, inst.display);
  EXPECT_EQ(pt, (std::vector<Element>{inst.witt.base().one(), inst.witt.base().zero()}));
}

TEST(ProjectivePoint, ZetaChangeRestoresThePoint) {
  auto z = zeta_action(3, 3);
  const WittRing& w = z.original.witt;
  const Ring& R = w.base();
  auto before = projective_point(w, z.pulled);
  auto after = projective_point(w, change_of_coords(w, z.pulled, z.change).display);
  EXPECT_TRUE(projectively_equal(R, after, projective_point(w, z.original.display)));
  EXPECT_FALSE(projectively_equal(R, before, after));
}

TEST(Etale, LubinTateChart) {
  for (std::size_t h : {2, 3, 4}) {
    auto lt = lubin_tate(h);
    const Ring& R = lt.witt.base();
    auto res = jacobian_etale_check(R, chart_map(R, projective_point(lt.witt, lt.display), 0));
    EXPECT_TRUE(res.etale) << "h=" << h;
  }
}

TEST(Etale, ConstantAndSquareMapsAreNot) {
  Ring R = lubin_tate_ring(3, 2, 4);
  EXPECT_FALSE(jacobian_etale_check(R, ChartMap{0, {R.one(), R.from_integer(3)}}).etale);
  Ring R2 = lubin_tate_ring(2, 3, 4);
  auto sq = jacobian_etale_check(R2, ChartMap{0, {R2.pow(R2.variable("u1"), 2ul)}});
  EXPECT_FALSE(sq.etale);
  EXPECT_EQ(sq.jacobian, R2.scale(R2.variable("u1"), 2));
}

TEST(Etale, AllChartsAgreeWithChartZero) {
  auto lt = lubin_tate(3);
  const Ring& R = lt.witt.base();
  auto charts = etale_all_charts(R, projective_point(lt.witt, lt.display));
  ASSERT_EQ(charts.size(), 3u);
  EXPECT_TRUE(charts[0].applicable);
  EXPECT_TRUE(charts[0].result.etale);
  EXPECT_FALSE(charts[1].applicable);
  EXPECT_FALSE(charts[2].applicable);
}

TEST(TangentOracle, HeightTwoOverF2) {
  auto inst = lubin_tate_fiber(2, 2, 2);
  auto res = tangent_lift_oracle(inst.witt, inst.display);
  EXPECT_EQ(res.class_count, 2u);
  EXPECT_EQ(res.expected, 2u);
  EXPECT_TRUE(res.closed_form_matches);
  EXPECT_TRUE(res.componentwise_addition);
  ASSERT_FALSE(res.representatives.empty());
  EXPECT_EQ(res.representatives.front(), 0u);
}

TEST(TangentOracle, BudgetAndPreconditions) {
  auto inst = lubin_tate_fiber(3, 2, 2);
  EXPECT_THROW(tangent_lift_oracle(inst.witt, inst.display, 1000), ResourceError);
  auto lt = lubin_tate(2);
  EXPECT_THROW(tangent_lift_oracle(lt.witt, lt.display), DomainError);
}
