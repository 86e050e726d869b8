#include <gtest/gtest.h>

#include <random>

#include "wdisp/ring/parse.hpp"
#include "wdisp/witt/finite.hpp"
#include "wdisp/witt/universal.hpp"
#include "wdisp/witt/witt.hpp"

using namespace wdisp;

namespace {

WittVector ints(const WittRing& w, std::initializer_list<long> c) {
  std::vector<Element> v;
  for (long x : c) v.push_back(w.base().from_integer(Integer(x)));
  return w.make(std::move(v));
}

}  // namespace

TEST(Ghost, ZerothComponent) {
  Ring R = Ring::polynomial(Ring::integers(), {"x0", "x1"});
  WittRing w(R, 2);
  EXPECT_EQ(w.ghost(w.make({R.variable("x0"), R.variable("x1")}), 0), R.variable("x0"));
}

TEST(Ghost, ThirdComponentAtThree) {
  WittRing w(Ring::integers(), 3);
  EXPECT_EQ(w.ghost(ints(w, {0, 0, 1}), 2), Ring::integers().from_integer(9));
}

TEST(Universal, LowOrderPolynomials) {
  const Ring& U = universal_ring();
  auto& cache = UniversalCache::instance();
  Element x0 = U.variable("x0"), y0 = U.variable("y0");
  for (unsigned long p : {2ul, 3ul, 5ul}) {
    EXPECT_EQ(cache.get(UniversalKind::Sum, p, 0), U.add(x0, y0));
    EXPECT_EQ(cache.get(UniversalKind::Product, p, 0), U.mul(x0, y0));
  }
  EXPECT_EQ(cache.get(UniversalKind::Sum, 2, 1), parse_element("x1 + y1 - x0*y0", U));
  EXPECT_EQ(cache.get(UniversalKind::Sum, 3, 1), parse_element("x1 + y1 - x0^2*y0 - x0*y0^2", U));
}

TEST(Witt, AddOverIntegers) {
  WittRing w(Ring::integers(), 2);
  EXPECT_EQ(w.add(ints(w, {1, 0}), ints(w, {1, 0})), ints(w, {2, -1}));
  auto x = ints(w, {3, -4});
  EXPECT_EQ(w.add(x, w.zero(2)), x);
}

TEST(Witt, MulOverIntegers) {
  WittRing w(Ring::integers(), 2);
  EXPECT_EQ(w.mul(ints(w, {0, 1}), ints(w, {0, 1})), ints(w, {0, 2}));
}

TEST(Witt, Teichmuller) {
  WittRing w(Ring::integers(), 5);
  EXPECT_EQ(w.teich(w.base().one(), 3), w.one(3));
  EXPECT_EQ(w.mul(w.teich(w.base().from_integer(2), 3), w.teich(w.base().from_integer(3), 3)),
            w.teich(w.base().from_integer(6), 3));
  EXPECT_TRUE(w.is_zero(w.teich(w.base().zero(), 3)));
}

TEST(Witt, Verschiebung) {
  WittRing w(Ring::integers(), 2);
  EXPECT_TRUE(w.is_zero(w.versch(w.zero(3))));
  EXPECT_EQ(w.versch(ints(w, {1, 0})), ints(w, {0, 1}));
  std::mt19937_64 rng(5);
  for (int t = 0; t < 30; ++t) {
    auto x = ints(w, {long(rng() % 7) - 3, long(rng() % 7) - 3, long(rng() % 7) - 3});
    auto y = ints(w, {long(rng() % 7) - 3, long(rng() % 7) - 3, long(rng() % 7) - 3});
    EXPECT_EQ(w.versch(w.add(x, y)), w.add(w.versch(x), w.versch(y)));
  }
}

TEST(Witt, FrobeniusOfTeichmuller) {
  Ring R = Ring::polynomial(Ring::integers(), {"t"});
  WittRing w(R, 3);
  Element t = R.variable("t");
  EXPECT_EQ(w.frob(w.teich(t, 3)), w.teich(R.pow(t, 3ul), 2));
}

TEST(Witt, FrobeniusOfVerschiebungIsMultiplicationByP) {
  WittRing w(Ring::integers(), 3);
  EXPECT_EQ(w.frob(w.versch(w.one(3))), ints(w, {3, -8}));
}

TEST(Witt, CharacteristicPFastPathMatchesUniversalPolynomials) {
  Ring R = Ring::quotient(Ring::polynomial(Ring::modular(3), {"u"}), {"u"}, 6);
  WittRing w(R, 3);
  Element u = R.variable("u");
  auto x = w.make({u, u});
  EXPECT_EQ(w.frob(x), w.make({R.pow(u, 3ul), R.pow(u, 3ul)}));
  EXPECT_EQ(w.truncate(w.frob_general(w.make({u, u, R.zero()})), 2), w.frob(x));
}

TEST(Witt, Invert) {
  Ring R = Ring::modular(9);
  WittRing w(R, 3);
  auto u = w.teich(R.from_integer(2), 3);
  EXPECT_EQ(w.invert(u), w.teich(R.invert(R.from_integer(2)), 3));
  auto x = w.add(w.one(2), w.versch(ints(w, {4, 0})));
  EXPECT_EQ(w.mul(x, w.invert(x)), w.one(2));
  EXPECT_THROW(w.invert(ints(w, {0, 1})), DomainError);
}

TEST(Witt, IdealOfDefinition) {
  WittRing w(Ring::integers(), 2);
  auto a = w.versch(ints(w, {5, 7, 1})), b = w.versch(ints(w, {-1, 2, 3}));
  EXPECT_TRUE(w.in_ideal(a));
  EXPECT_FALSE(w.in_ideal(w.one(3)));
  EXPECT_TRUE(w.in_ideal(w.add(a, b)));
}

TEST(FiniteWitt, TablesAgreeWithDynamicArithmetic) {
  Ring k = Ring::finite_field(2, 2);
  FiniteWittRing fw(k, 2, 2);
  const WittRing& w = fw.dynamic();
  std::mt19937_64 rng(9);
  for (int t = 0; t < 50; ++t) {
    auto a = FiniteWittRing::Vec(rng() % fw.size()), b = FiniteWittRing::Vec(rng() % fw.size());
    EXPECT_EQ(fw.vector(fw.add(a, b)), w.add(fw.vector(a), fw.vector(b)));
    EXPECT_EQ(fw.vector(fw.mul(a, b)), w.mul(fw.vector(a), fw.vector(b)));
    EXPECT_EQ(fw.vector(fw.frob(a)), w.frob(fw.vector(a)));
  }
}

TEST(FiniteWitt, BudgetIsEnforced) { EXPECT_THROW(FiniteWittRing(Ring::finite_field(3, 2), 3, 4, 1024), ResourceError); }
