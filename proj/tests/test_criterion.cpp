#include "common.hpp"

using namespace frey;

namespace {

std::vector<u64> primes_between(u64 lo, u64 hi) {
  std::vector<u64> out;
  for (u64 q = lo; q <= hi; ++q)
    if (q != 5 && is_prime(q)) out.push_back(q);
  return out;
}

// every divisor n of q-1 up to a small cap, to keep the sweep cheap
std::vector<u64> small_divisors(u64 m) {
  std::vector<u64> out;
  for (u64 n = 1; n <= std::min<u64>(m, 40); ++n)
    if (m % n == 0) out.push_back(n);
  return out;
}

}  // namespace

TEST(Criterion, ZetaFamilyExamples) {
  EXPECT_TRUE(zeta_family(1, 1, PrimeModulus(11)).empty());
  const auto z = zeta_family(1, 2, PrimeModulus(19));
  ASSERT_EQ(z.size(), 1u);
  EXPECT_EQ(z[0].zeta.value(), 18u);
  EXPECT_EQ(z[0].delta, 4u);
  EXPECT_TRUE(z[0].in_plus);
  EXPECT_TRUE(z[0].in_minus);
  EXPECT_THROW(zeta_family(1, 4, PrimeModulus(19)), std::invalid_argument);
  EXPECT_THROW(zeta_family(3, 2, PrimeModulus(19)), std::invalid_argument);
}

TEST(Criterion, FCurveExample) {
  const PrimeModulus q(19);
  const auto e = zeta_family(1, 2, q)[0];
  const auto c = f_curve(1, e, Sign::plus, q);
  EXPECT_EQ(c.a2.value(), 12u);
  EXPECT_EQ(c.a4.value(), 13u);
  EXPECT_EQ(discriminant(c), FieldElement(6480, q) * e.zeta * e.zeta);
  EXPECT_FALSE(is_singular(c));
}

TEST(Criterion, MembershipViolationRejected) {
  ZetaEntry e{FieldElement(1, PrimeModulus(19)), 4, false, true};
  EXPECT_THROW(f_curve(1, e, Sign::plus, PrimeModulus(19)), std::invalid_argument);
  e = {FieldElement(1, PrimeModulus(19)), 4, true, false};
  EXPECT_THROW(f_curve(2, e, Sign::minus, PrimeModulus(19)), std::invalid_argument);
}

TEST(Criterion, ConditionBShortCircuits) {
  const auto& s = test::fixture();
  int seen = 0;
  for (u64 p = 17; p < 400 && seen < 3; ++p) {
    if (!is_prime(p)) continue;
    for (u64 n = 2; n <= 60; n += 2) {
      const u64 q = n * p + 1;
      if (!is_prime(q)) continue;
      const i64 a = s.elliptic_coefficient(s.record("1200K1"), q);
      if ((a * a - 4) % static_cast<i64>(p)) continue;
      const auto r = evaluate_form(p, n, Branch::K, s);
      EXPECT_FALSE(r.passed);
      EXPECT_EQ(r.failed, 'b');
      EXPECT_EQ(r.checked_zetas, 0u);
      ++seen;
    }
  }
  EXPECT_GT(seen, 0);
}

TEST(Criterion, VacuousZetaSetsPass) {
  const auto& s = test::fixture();
  bool found = false;
  for (u64 p = 17; p < 2000 && !found; ++p) {
    if (!is_prime(p)) continue;
    for (u64 n = 2; n <= 10 && !found; n += 2) {
      const u64 q = n * p + 1;
      if (!is_prime(q) || !zeta_family(1, n, PrimeModulus(q)).empty()) continue;
      const i64 a = s.elliptic_coefficient(s.record("1200K1"), q);
      if ((a * a - 4) % static_cast<i64>(p) == 0) continue;
      EXPECT_TRUE(check_form(p, n, Branch::K, s));
      found = true;
    }
  }
  EXPECT_TRUE(found);
}

TEST(Criterion, OracleWitnesses) {
  // smallest n per branch from tests/oracle/criterion_oracle.py
  const std::map<u64, std::pair<u64, u64>> oracle{{17, {6, 14}}, {19, {10, 10}}, {23, {2, 2}}};
  const auto& s = test::fixture();
  for (const auto& [p, n] : oracle) {
    const auto k = find_witness(p, Branch::K, 200, s), a = find_witness(p, Branch::A, 200, s);
    ASSERT_TRUE(k && a);
    EXPECT_EQ(k->n, n.first) << p;
    EXPECT_EQ(a->n, n.second) << p;
    EXPECT_EQ(k->q, k->n * p + 1);
    EXPECT_EQ(k->form_label, "1200K1");
    EXPECT_EQ(a->form_label, "1200A1");
  }
}

TEST(Criterion, SearchEdges) {
  const auto& s = test::fixture();
  EXPECT_FALSE(find_witness(17, Branch::K, 0, s).has_value());
  EXPECT_THROW(find_witness(13, Branch::K, 200, s), std::invalid_argument);
  EXPECT_THROW(find_witness(21, Branch::K, 200, s), std::invalid_argument);
  EXPECT_THROW(check_form(17, 4, Branch::K, s), std::invalid_argument);  // 69 is composite
  EXPECT_TRUE(verify_range(17, 16, s).empty());
}

TEST(Criterion, SharedWitnessIsCommon) {
  const auto& s = test::fixture();
  // p = 17: K passes at n in {6, 8, 26, 78, 84}, A only at 14 (oracle table up to 160)
  EXPECT_FALSE(find_shared_witness(17, 160, s).has_value());
  for (u64 p : {19ULL, 23ULL, 101ULL}) {
    const auto w = find_shared_witness(p, 400, s);
    ASSERT_TRUE(w);
    EXPECT_EQ(w->first.n, w->second.n);
    EXPECT_GE(w->first.n, std::max(find_witness(p, Branch::K, 400, s)->n, find_witness(p, Branch::A, 400, s)->n));
  }
}

TEST(Criterion, RangeDeterministic) {
  const auto& s = test::fixture();
  RangeOptions one, many;
  many.workers = 4;
  const auto a = verify_range(17, 400, s, one), b = verify_range(17, 400, s, many);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].p, b[i].p);
    ASSERT_TRUE(a[i].ok());
    EXPECT_EQ(a[i].k->n, b[i].k->n);
    EXPECT_EQ(a[i].a->n, b[i].a->n);
  }
}

TEST(CriterionProperty, DiscriminantsTwistsAndDelta) {
  for (u64 q : primes_between(7, 500)) {
    const PrimeModulus m(q);
    const int chi = legendre(FieldElement::from_signed(-1, m));
    for (u64 n : small_divisors(q - 1))
      for (int family : {1, 2}) {
        const u64 c = family == 1 ? 62500 : 20;
        const auto zs = zeta_family(family, n, m);
        ASSERT_LE(zs.size(), n);
        for (const auto& e : zs) {
          ASSERT_LE(e.delta, (q - 1) / 2);
          ASSERT_EQ(FieldElement(e.delta, m) * FieldElement(e.delta, m), FieldElement(405, m) + FieldElement(c, m) * e.zeta);
          const FieldElement want = FieldElement(family == 1 ? 6480 : 162000, m) * e.zeta * e.zeta;
          for (Sign sg : {Sign::plus, Sign::minus}) {
            if ((sg == Sign::plus && !e.in_plus) || (sg == Sign::minus && !e.in_minus)) continue;
            ASSERT_EQ(discriminant(f_curve(family, e, sg, m)), want);
            ASSERT_FALSE(want.is_zero());
          }
          if (e.in_plus && e.in_minus)
            ASSERT_EQ(trace(f_curve(family, e, Sign::minus, m)), chi * trace(f_curve(family, e, Sign::plus, m)));
        }
      }
  }
}

TEST(CriterionProperty, FreyCurveCrossCheck) {
  for (u64 q : primes_between(7, 500)) {
    const PrimeModulus m(q);
    const FieldElement three(3, m);
    for (int family : {1, 2}) {
      for (const auto& e : zeta_family(family, q - 1, m)) {
        if (!e.in_plus) continue;
        const auto alpha_sq = FieldElement::from_signed(-225, m) + FieldElement(10, m) * FieldElement(e.delta, m);
        const FieldElement alpha(*sqrt_mod(alpha_sq), m);
        FieldElement a(0, m), b(0, m);
        if (family == 1) {
          b = three * FieldElement(10, m).inverse() + alpha * FieldElement(50, m).inverse();
          a = three * FieldElement(5, m).inverse() - b;
          ASSERT_EQ(FieldElement(5, m) * (a + b), three);
          ASSERT_EQ(phi(a, b), FieldElement(5, m) * e.zeta);
        } else {
          b = three * FieldElement(2, m).inverse() - alpha * FieldElement(10, m).inverse();
          a = three - b;
          ASSERT_EQ(phi(a, b), e.zeta);
        }
        ASSERT_EQ(trace(frey_curve(FreyParams(a, b))), trace(f_curve(family, e, Sign::plus, m))) << q;
      }
    }
  }
}
