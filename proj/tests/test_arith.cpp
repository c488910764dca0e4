#include "common.hpp"

using namespace frey;

TEST(Arith, LegendreSmall) {
  const PrimeModulus q(7);
  EXPECT_EQ(legendre(FieldElement(0, q)), 0);
  EXPECT_EQ(legendre(FieldElement(3, q)), -1);
  EXPECT_EQ(legendre(FieldElement(2, q)), 1);
}

TEST(Arith, SqrtModCanonical) {
  const PrimeModulus q(7);
  EXPECT_EQ(sqrt_mod(FieldElement(4, q)), 2u);
  EXPECT_EQ(sqrt_mod(FieldElement(2, q)), 3u);
  EXPECT_FALSE(sqrt_mod(FieldElement(3, q)).has_value());
}

TEST(Arith, RootsOfUnity) {
  auto vals = [](const std::vector<FieldElement>& v) {
    std::vector<u64> out;
    for (const auto& z : v) out.push_back(z.value());
    return out;
  };
  EXPECT_EQ(vals(roots_of_unity(1, PrimeModulus(13))), (std::vector<u64>{1}));
  EXPECT_EQ(vals(roots_of_unity(2, PrimeModulus(19))), (std::vector<u64>{1, 18}));
  EXPECT_EQ(vals(roots_of_unity(4, PrimeModulus(13))), (std::vector<u64>{1, 5, 8, 12}));
  EXPECT_THROW(roots_of_unity(5, PrimeModulus(13)), std::invalid_argument);
}

TEST(Arith, PrimalityExamples) {
  EXPECT_FALSE(is_prime(u64{1}));
  EXPECT_TRUE(is_prime(u64{103}));
  EXPECT_FALSE(is_prime(u64{35}));
  EXPECT_TRUE(is_prime(u64{18446744073709551557ULL}));
  EXPECT_FALSE(is_prime(u64{3215031751}));  // strong pseudoprime to 2, 3, 5, 7
  EXPECT_TRUE(is_prime(BigInt("170141183460469231731687303715884105727")));
  EXPECT_FALSE(is_prime(BigInt("170141183460469231731687303715884105729")));
}

TEST(Arith, FactorExamples) {
  EXPECT_TRUE(factor(BigInt(1)).empty());
  auto f = factor(BigInt(275));
  ASSERT_EQ(f.size(), 2u);
  EXPECT_EQ(f[0], (std::pair<BigInt, unsigned>{5, 2}));
  EXPECT_EQ(f[1], (std::pair<BigInt, unsigned>{11, 1}));
  auto g = factor(BigInt(262144));
  ASSERT_EQ(g.size(), 1u);
  EXPECT_EQ(g[0], (std::pair<BigInt, unsigned>{2, 18}));
}

TEST(Arith, FactorLargeSemiprime) {
  const BigInt p("1000000000039"), q("10000000000000061");
  auto f = factor(p * q * 4);
  ASSERT_EQ(f.size(), 3u);
  EXPECT_EQ(f[1].first, p);
  EXPECT_EQ(f[2].first, q);
}

TEST(ArithProperty, PrimalityAgreesWithTrialDivisionTo1e6) {
  std::vector<bool> composite(1000001, false);
  for (u64 i = 2; i * i <= 1000000; ++i)
    if (!composite[i])
      for (u64 j = i * i; j <= 1000000; j += i) composite[j] = true;
  for (u64 n = 0; n <= 1000000; ++n) ASSERT_EQ(is_prime(n), n >= 2 && !composite[n]) << n;
}

TEST(ArithProperty, FactorInvertsMultiplicationTo1e6) {
  for (u64 n = 1; n <= 1000000; ++n) {
    u64 prod = 1;
    for (const auto& [p, e] : factor_u64(n)) {
      ASSERT_TRUE(is_prime(p)) << n;
      for (unsigned i = 0; i < e; ++i) prod *= p;
    }
    ASSERT_EQ(prod, n);
  }
}

TEST(ArithProperty, SqrtMatchesLegendre) {
  for (u64 q : {3ULL, 7ULL, 13ULL, 101ULL, 1009ULL, 65537ULL}) {
    const PrimeModulus m(q);
    const u64 step = q > 2000 ? 97 : 1;
    for (u64 a = 1; a < q; a += step) {
      const FieldElement x(a, m);
      const auto r = sqrt_mod(x);
      ASSERT_EQ(r.has_value(), legendre(x) == 1);
      if (r) {
        EXPECT_LE(*r, (q - 1) / 2);
        EXPECT_EQ(FieldElement(*r, m) * FieldElement(*r, m), x);
      }
    }
  }
}

TEST(ArithProperty, RootsOfUnityAreDistinctAndComplete) {
  for (u64 q : {13ULL, 61ULL, 1021ULL}) {
    const PrimeModulus m(q);
    for (u64 n = 1; n <= q - 1; ++n) {
      if ((q - 1) % n) continue;
      const auto z = roots_of_unity(n, m);
      ASSERT_EQ(z.size(), n);
      for (std::size_t i = 0; i < z.size(); ++i) {
        EXPECT_EQ(z[i].pow(n).value(), 1u);
        if (i) EXPECT_LT(z[i - 1].value(), z[i].value());
      }
    }
  }
}

TEST(Arith, FieldElementLargeModulus) {
  const PrimeModulus q(18446744073709551557ULL);
  const FieldElement a(q.value() - 1, q);
  EXPECT_EQ((a * a).value(), 1u);
  EXPECT_EQ((a + a).value(), q.value() - 2);
  EXPECT_EQ((a * a.inverse()).value(), 1u);
  EXPECT_THROW(PrimeModulus(15), std::invalid_argument);
  EXPECT_THROW(PrimeModulus(2), std::invalid_argument);
}
