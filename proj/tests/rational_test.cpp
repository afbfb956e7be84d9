#include <gtest/gtest.h>

#include "pmodal/rational.hpp"

namespace pmodal {
namespace {

TEST(ParseRational, Fractions) {
  EXPECT_EQ(parse_rational("7/20"), Rational(7, 20));
  EXPECT_EQ(parse_rational("2/4"), Rational(1, 2));
  EXPECT_EQ(parse_rational("0/5"), Rational(0));
  EXPECT_FALSE(parse_rational("1/0"));
  EXPECT_FALSE(parse_rational("1/"));
  EXPECT_FALSE(parse_rational("/2"));
}

TEST(ParseRational, DecimalsAreExact) {
  EXPECT_EQ(parse_rational("0.35"), Rational(7, 20));
  EXPECT_EQ(parse_rational(".5"), Rational(1, 2));
  EXPECT_EQ(parse_rational("0.67"), Rational(67, 100));
  EXPECT_EQ(parse_rational("1."), Rational(1));
  EXPECT_EQ(parse_rational("0.1"), Rational(1, 10));
  EXPECT_FALSE(parse_rational("."));
  EXPECT_FALSE(parse_rational("0.1.2"));
}

TEST(ParseRational, IntegersAndJunk) {
  EXPECT_EQ(parse_rational("1"), Rational(1));
  EXPECT_EQ(parse_rational("0"), Rational(0));
  EXPECT_FALSE(parse_rational(""));
  EXPECT_FALSE(parse_rational("-1"));
  EXPECT_FALSE(parse_rational("+1"));
  EXPECT_FALSE(parse_rational("1e3"));
  EXPECT_FALSE(parse_rational("abc"));
}

TEST(ToDecimal, RoundsHalfUpAndTrims) {
  EXPECT_EQ(to_decimal(Rational(7, 20)), "0.35");
  EXPECT_EQ(to_decimal(Rational(1, 3)), "0.333333");
  EXPECT_EQ(to_decimal(Rational(2, 3)), "0.666667");
  EXPECT_EQ(to_decimal(Rational(1)), "1");
  EXPECT_EQ(to_decimal(Rational(0)), "0");
  EXPECT_EQ(to_decimal(Rational(1, 8), 2), "0.13");
  EXPECT_EQ(to_decimal(Rational(-1, 4)), "-0.25");
}

TEST(ToString, CanonicalFraction) {
  EXPECT_EQ(to_string(Rational(14, 40)), "7/20");
  EXPECT_EQ(to_string(Rational(3)), "3");
}

}  // namespace
}  // namespace pmodal
