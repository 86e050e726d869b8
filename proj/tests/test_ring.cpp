#include <gtest/gtest.h>

#include "wdisp/ring/json.hpp"
#include "wdisp/ring/parse.hpp"

using namespace wdisp;

namespace {

Element el(const Ring& R, const char* text) { return parse_element(text, R); }

}  // namespace

TEST(Ring, ModularAddition) {
  Ring R = Ring::modular(7);
  EXPECT_EQ(R.add(R.from_integer(3), R.from_integer(5)), R.from_integer(1));
}

TEST(Ring, QuotientRelation) {
  Ring R = Ring::quotient(Ring::polynomial(Ring::integers(), {"u1"}), {"u1"}, 2);
  Element u = R.variable("u1");
  EXPECT_TRUE(R.is_zero(R.mul(u, u)));
}

TEST(Ring, PolynomialProduct) {
  Ring R = Ring::polynomial(Ring::integers(), {"x"});
  EXPECT_EQ(R.mul(el(R, "x+1"), el(R, "x-1")), el(R, "x^2-1"));
}

TEST(Ring, ModularInverse) {
  Ring R = Ring::modular(9);
  EXPECT_EQ(R.invert(R.from_integer(2)), R.from_integer(5));
}

TEST(Ring, MaximalIdealElementIsNotUnit) {
  for (unsigned long p : {2ul, 3ul}) {
    Ring R = Ring::quotient(Ring::polynomial(Ring::modular(ipow(p, 2)), {"u1"}), {"u1"}, 3);
    EXPECT_FALSE(R.is_unit(R.variable("u1")));
    EXPECT_THROW(R.invert(R.variable("u1")), DomainError);
  }
}

TEST(Ring, GeometricSeriesInverse) {
  Ring R = Ring::quotient(Ring::polynomial(Ring::rationals(), {"u1"}), {"u1"}, 3);
  EXPECT_EQ(R.invert(el(R, "1+u1")), el(R, "1-u1+u1^2"));
}

TEST(Ring, FrobeniusPower) {
  Ring R = Ring::polynomial(Ring::modular(2), {"u1", "u2"});
  EXPECT_EQ(R.frobenius_power(el(R, "u1+u2")), el(R, "u1^2+u2^2"));
  for (unsigned long p : {2ul, 3ul, 5ul}) {
    Ring F = Ring::modular(p);
    for (unsigned long c = 0; c < p; ++c) EXPECT_EQ(F.frobenius_power(F.from_integer(c)), F.from_integer(c));
  }
}

TEST(Ring, FrobeniusOnF4) {
  Ring F4 = parse_ring("GF(4;z^2+z+1)");
  EXPECT_EQ(F4.frobenius_power(F4.generator()), el(F4, "z+1"));
}

TEST(Ring, Substitution) {
  Ring R = Ring::polynomial(Ring::integers(), {"u1", "u2"});
  EXPECT_EQ(R.substitute(el(R, "u1^2+1"), {{"u1", R.zero()}, {"u2", R.one()}}, R), R.one());
  EXPECT_EQ(R.substitute(el(R, "u1*u2"), {{"u1", R.one()}, {"u2", R.from_integer(2)}}, R), R.from_integer(2));
  unsigned long p = 3;
  Element x = R.variable("u1");
  for (int i = 0; i < 2; ++i) x = R.substitute(x, {{"u1", R.pow(R.variable("u1"), p)}, {"u2", R.variable("u2")}}, R);
  EXPECT_EQ(x, R.pow(R.variable("u1"), p * p));
}

TEST(Ring, FiniteFieldNeedsIrreduciblePolynomial) {
  EXPECT_THROW(Ring::finite_field(2, 2, {Integer(1), Integer(0), Integer(1)}), DomainError);
  EXPECT_TRUE(Ring::finite_field(3, 2).is_finite_field());
  EXPECT_EQ(Ring::finite_field(3, 2).field_order(), 9);
}

TEST(Ring, DescriptorRoundTrip) {
  for (const char* d : {"Z", "Q", "Z/9", "GF(4)", "GF(3^2)", "Z/4[u1,u2]/(2,u1)^3", "Z/9[b,1/f]", "Q[u1]/(u1)^5"}) {
    Ring R = parse_ring(d);
    EXPECT_TRUE(parse_ring(R.to_string()).same(R)) << d;
  }
  EXPECT_THROW(parse_ring("W(k)"), ParseError);
  EXPECT_THROW(parse_ring("GF(6)"), ParseError);
}

TEST(Ring, ElementJsonRoundTripIsExact) {
  Ring R = parse_ring("Q[u1,u2]");
  Element x = el(R, "123456789012345678901234567890*u1^3*u2 - 7/3*u2 + 1");
  Json j = element_to_json(R, x);
  EXPECT_EQ(element_from_json(R, j), x);
  EXPECT_EQ(element_from_json(R, Json::parse(j.dump())), x);
  EXPECT_EQ(element_from_json(R, Json("u1 + 1")), el(R, "u1+1"));
}

TEST(Ring, ParseErrors) {
  Ring R = parse_ring("Z[x]");
  EXPECT_THROW(parse_element("x +", R), ParseError);
  EXPECT_THROW(parse_element("y", R), ParseError);
}
