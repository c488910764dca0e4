#include "common.hpp"

using namespace frey;

namespace {

IntPoly random_poly(std::mt19937_64& rng, int deg, int range) {
  std::vector<BigInt> c;
  for (int i = 0; i <= deg; ++i) c.push_back(BigInt(static_cast<i64>(rng() % (2 * range + 1)) - range));
  if (c.back() == 0) c.back() = 1;
  return IntPoly(c);
}

}  // namespace

TEST(Polyalg, ResultantExamples) {
  EXPECT_EQ(resultant(IntPoly({-2, 1}), IntPoly({-5, 1})), -3);
  EXPECT_EQ(resultant(IntPoly({1, 0, 1}), IntPoly({1, 0, 1})), 0);
  EXPECT_EQ(resultant(IntPoly({-2, 0, 1}), IntPoly({-3, 0, 1})), 1);
}

TEST(Polyalg, CharpolyForm63) {
  const IntPoly f({25, -30, -18, 6, 1});
  const RatPoly e({Rational(-20, 10), Rational(-13, 10), Rational(6, 10), Rational(1, 10)});
  EXPECT_EQ(charpoly_of_element(f, e), IntPoly({16, -8, -7, 2, 1}));
}

TEST(Polyalg, CharpolyIdentityForm64) {
  const IntPoly f({604, -492, -87, 6, 1});
  EXPECT_EQ(charpoly_of_element(f, RatPoly({Rational(0), Rational(1)})), f);
}

TEST(Polyalg, CharpolyRational) {
  EXPECT_EQ(charpoly_of_element(IntPoly({0, 1}), RatPoly({Rational(-2)})), IntPoly({2, 1}));
}

TEST(Polyalg, CharpolyNonIntegralRejected) {
  EXPECT_THROW(charpoly_of_element(IntPoly({-2, 0, 1}), RatPoly({Rational(0), Rational(1, 2)})), std::domain_error);
}

TEST(Polyalg, NormShift) {
  EXPECT_EQ(norm_shift(IntPoly({2, 1}), BigInt(-2)), 0);
  EXPECT_EQ(norm_shift(IntPoly({-1, 1}), BigInt(4)), 3);
  BigInt v = norm_shift(IntPoly({16, -8, -7, 2, 1}), BigInt(4));
  for (const auto& [p, e] : factor(v)) EXPECT_LT(p, 13);
}

TEST(Polyalg, Irreducibility) {
  EXPECT_TRUE(certify_irreducible(IntPoly({25, -30, -18, 6, 1})));
  EXPECT_TRUE(certify_irreducible(IntPoly({604, -492, -87, 6, 1})));
  EXPECT_TRUE(certify_irreducible(IntPoly({1, 1, 0, 0, 1})));
  EXPECT_FALSE(certify_irreducible(IntPoly({1, 0, 0, 0, 1})));  // irreducible, but splits mod every prime
  EXPECT_FALSE(certify_irreducible(IntPoly({16, -8, -7, 2, 1})));  // (x^2+x-4)^2
  EXPECT_FALSE(certify_irreducible(IntPoly({-1, 0, 1})));
}

TEST(PolyalgProperty, ResultantSymmetry) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    const int df = 1 + rng() % 6, dg = 1 + rng() % 6;
    const auto f = random_poly(rng, df, 20), g = random_poly(rng, dg, 20);
    const int sign = (df * dg) % 2 ? -1 : 1;
    ASSERT_EQ(resultant(f, g), sign * resultant(g, f));
  }
}

TEST(PolyalgProperty, ResultantMultiplicative) {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 150; ++i) {
    const auto f = random_poly(rng, 1 + rng() % 5, 15);
    const auto g1 = random_poly(rng, 1 + rng() % 4, 15), g2 = random_poly(rng, 1 + rng() % 4, 15);
    ASSERT_EQ(resultant(f, g1 * g2), resultant(f, g1) * resultant(f, g2));
  }
}

TEST(PolyalgProperty, SubresultantMatchesSylvester) {
  std::mt19937_64 rng(6);
  for (int i = 0; i < 150; ++i) {
    const auto f = random_poly(rng, 1 + rng() % 8, 50), g = random_poly(rng, 1 + rng() % 8, 50);
    ASSERT_EQ(resultant(f, g), sylvester_resultant(f, g));
  }
}

TEST(PolyalgProperty, CharpolyOfGeneratorIsFieldPoly) {
  for (const IntPoly& f : {IntPoly({-2, 0, 1}), IntPoly({25, -30, -18, 6, 1}), IntPoly({-50, 34, -24, -13, 2, 1}),
                           IntPoly({2, -2, 0, 1})})
    EXPECT_EQ(charpoly_of_element(f, RatPoly({Rational(0), Rational(1)})), f);
}

TEST(PolyalgProperty, NormShiftIsResultant) {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 100; ++i) {
    auto p = random_poly(rng, 1 + rng() % 5, 30);
    std::vector<BigInt> c = p.c;
    c.back() = 1;
    p = IntPoly(c);
    const BigInt t(static_cast<i64>(rng() % 41) - 20);
    const BigInt r = resultant(p, linear(t));
    ASSERT_EQ(norm_shift(p, t), r < 0 ? BigInt(-r) : r);
  }
}
