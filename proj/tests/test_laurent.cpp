#include <gtest/gtest.h>

#include <random>

#include "knotfert/laurent.hpp"
#include "knotfert/rational.hpp"

using knotfert::LaurentPoly;
using knotfert::Rational;

namespace {

LaurentPoly P(const char* pairs) { return LaurentPoly::from_pairs(pairs); }

LaurentPoly random_poly(std::mt19937& rng) {
  std::uniform_int_distribution<int> e(-6, 6), c(-4, 4), n(0, 5);
  std::map<int, std::int64_t> t;
  for (int k = n(rng); k > 0; --k) t[e(rng)] += c(rng);
  return LaurentPoly::from_terms(t);
}

}  // namespace

TEST(Laurent, TrimsZeroCoefficients) {
  const auto p = P("-2:0 1:3 5:0");
  EXPECT_EQ(p.low_degree(), 1);
  EXPECT_EQ(p.high_degree(), 1);
  EXPECT_EQ(p.to_pairs(), "1:3");
  EXPECT_TRUE((P("2:1") + P("2:-1")).is_zero());
  EXPECT_EQ(LaurentPoly().to_pairs(), "0:0");
}

TEST(Laurent, PrintsLikeAPolynomial) {
  EXPECT_EQ(P("1:1 3:1 4:-1").to_string(), "-t^4 + t^3 + t");
  EXPECT_EQ(P("-2:1 -1:-1 0:1").to_string(), "1 - t^-1 + t^-2");
  EXPECT_EQ(P("2:-3").to_string("A"), "-3*A^2");
  EXPECT_EQ(LaurentPoly().to_string(), "0");
}

TEST(Laurent, PairsRoundTrip) {
  std::mt19937 rng(7);
  for (int i = 0; i < 200; ++i) {
    const auto p = random_poly(rng);
    EXPECT_EQ(LaurentPoly::from_pairs(p.to_pairs()), p);
  }
  EXPECT_THROW(LaurentPoly::from_pairs("1"), std::invalid_argument);
  EXPECT_THROW(LaurentPoly::from_pairs("1:x"), std::invalid_argument);
}

TEST(Laurent, RingAxiomsOnRandomPolys) {
  std::mt19937 rng(11);
  for (int i = 0; i < 200; ++i) {
    const auto a = random_poly(rng), b = random_poly(rng), c = random_poly(rng);
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ((a - b) + b, a);
    EXPECT_EQ((a * b).mirrored(), a.mirrored() * b.mirrored());
  }
}

TEST(Laurent, ExactDivision) {
  std::mt19937 rng(3);
  const LaurentPoly delta = P("-2:-1 2:-1");
  for (int i = 0; i < 100; ++i) {
    const auto a = random_poly(rng);
    EXPECT_EQ((a * delta).divided_exact(delta), a);
  }
  EXPECT_THROW(P("0:1").divided_exact(delta), std::domain_error);
  EXPECT_THROW(P("0:1").divided_exact(LaurentPoly()), std::domain_error);
}

TEST(Laurent, EvaluateAndRescale) {
  EXPECT_EQ(P("1:1 3:1 4:-1").evaluate(-1), -3);
  EXPECT_EQ(P("-2:1 -1:-1 0:1 1:-1 2:1").evaluate(-1), 5);
  EXPECT_EQ(P("0:2 3:1").evaluate(2), 10);
  EXPECT_THROW(P("-1:1").evaluate(2), std::domain_error);
  EXPECT_EQ(P("-8:1 4:-2").rescaled(-1, 4), P("2:1 -1:-2"));
  EXPECT_THROW(P("3:1").rescaled(1, 4), std::domain_error);
}

TEST(Laurent, MirrorAndPalindrome) {
  EXPECT_EQ(P("1:1 3:1 4:-1").mirrored(), P("-1:1 -3:1 -4:-1"));
  EXPECT_TRUE(P("-2:1 -1:-1 0:1 1:-1 2:1").is_palindromic());
  EXPECT_FALSE(P("1:1 3:1 4:-1").is_palindromic());
}

TEST(Rational, NormalizesAndCompares) {
  EXPECT_EQ(Rational(6, -4), Rational(-3, 2));
  EXPECT_EQ(Rational(-7, 2).floor(), -4);
  EXPECT_EQ(Rational(7, 2).floor(), 3);
  EXPECT_TRUE(Rational(3, 5) * Rational(25) - Rational(3) <= Rational(12));
  EXPECT_TRUE(Rational(-6, 5) < Rational(1));
  EXPECT_EQ((Rational(5, 2) / Rational(1, 10)).to_string(), "25");
  EXPECT_THROW(Rational(1, 0), std::domain_error);
}
