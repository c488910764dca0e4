#include "common.hpp"

using namespace frey;

namespace {

std::vector<u64> odd_primes_upto(u64 n) {
  std::vector<u64> out;
  for (u64 q = 3; q <= n; ++q)
    if (q != 5 && is_prime(q)) out.push_back(q);
  return out;
}

}  // namespace

TEST(Sieve, PqPoly) {
  const PrimeModulus q3(3), q11(11);
  EXPECT_EQ(pq_poly(q3, trace_set(q3)), IntPoly({-16, 0, 1}) * IntPoly({-4, 0, 1}));
  EXPECT_EQ(pq_poly(q3, TraceSet{3, {}}), IntPoly({-16, 0, 1}));
  EXPECT_EQ(pq_poly(q11, trace_set(q11)), IntPoly({-144, 0, 1}) * IntPoly({0, 1}) * IntPoly({-16, 0, 1}));
  EXPECT_THROW(pq_poly(q3, trace_set(q11)), std::invalid_argument);
}

TEST(Sieve, ResultantsAtLevel5200) {
  const auto& s = test::fixture();
  EXPECT_EQ(rq_resultant(s, s.record("5200 #63"), 3), 262144);
  const BigInt r64 = rq_resultant(s, s.record("5200 #64"), 3);
  for (const auto& [p, e] : factor(r64 < 0 ? BigInt(-r64) : r64)) EXPECT_LT(p, 13);
}

TEST(Sieve, SurvivorExamples) {
  const auto& s = test::fixture();
  for (const auto* f : s.at_level(50)) EXPECT_TRUE(survivors_for_q(s, *f, 3, 13).primes.empty());
  EXPECT_TRUE(survivors_for_q(s, s.record("5200 #63"), 3, 13).primes.empty());
  const auto w = survivors_for_q(s, s.record("1200K1"), 19, 13);
  EXPECT_TRUE(w.unbounded || std::binary_search(w.primes.begin(), w.primes.end(), BigInt(19)));
  const auto v = survivors_for_q(s, s.record("5200 #63"), 19, 13);
  EXPECT_TRUE(std::binary_search(v.primes.begin(), v.primes.end(), BigInt(19)));
}

TEST(Sieve, Level50ByThree) {
  const auto& s = test::fixture();
  for (const auto& v : run_sieve(s, s.at_level(50), {3}, 13)) EXPECT_TRUE(v.eliminated()) << v.label;
}

TEST(Sieve, FreyLikeFormsSurvive) {
  const auto& s = test::fixture();
  const auto v = run_sieve(s, {&s.record("1200K1"), &s.record("1200A1")}, {7, 11, 13}, 17);
  for (const auto& x : v) EXPECT_TRUE(x.unbounded) << x.label;
  for (const char* l : {"1200K1", "1200A1"})
    for (u64 q : {7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 101ULL, 211ULL, 499ULL})
      EXPECT_EQ(rq_resultant(s, s.record(l), q), 0) << l << " q=" << q;
}

TEST(Sieve, EmptyAndValidation) {
  const auto& s = test::fixture();
  EXPECT_TRUE(run_sieve(s, {}, {3}, 13).empty());
  EXPECT_THROW(run_sieve(s, s.at_level(50), {3, 3}, 13), std::invalid_argument);
  EXPECT_THROW(run_sieve(s, s.at_level(50), {5}, 13), std::invalid_argument);
  EXPECT_THROW(run_sieve(s, s.at_level(50), {9}, 13), std::invalid_argument);
  const auto v = run_sieve(s, s.at_level(50), {}, 13);
  EXPECT_TRUE(v[0].unbounded);
}

TEST(Sieve, AllAuxDividingLevelIsUnbounded) {
  const auto& s = test::fixture();
  const auto v = run_sieve(s, {&s.record("5200 #63")}, {13}, 13);
  EXPECT_TRUE(v[0].unbounded);
  EXPECT_EQ(v[0].skipped, std::vector<u64>{13});
}

TEST(Sieve, UnresolvedCofactorNeverEliminated) {
  const BigInt n = BigInt("1000000000000000003") * BigInt("1000000000000000009");
  const auto s = detail::survivors_from_value(n * 7, 3, 13, 16);
  EXPECT_FALSE(s.unbounded);
  EXPECT_EQ(s.unresolved.size(), 1u);
  SieveVerdict v;
  bool first = true;
  detail::intersect(v, s, first);
  EXPECT_FALSE(v.eliminated());
}

TEST(SieveProperty, TwoRoutesAgreeOnRationalForms) {
  const auto& s = test::fixture();
  for (const auto& r : s.records()) {
    if (r.kind != FormKind::elliptic) continue;
    for (u64 q : odd_primes_upto(37)) {
      if (r.level % q == 0) continue;
      const auto via_r = survivors_for_q(s, r, q, 13);
      const auto direct = survivors_direct(s.elliptic_coefficient(r, q), q, trace_set(PrimeModulus(q)), 13);
      ASSERT_EQ(via_r.unbounded, direct.unbounded) << r.label << " q=" << q;
      if (!via_r.unbounded) ASSERT_EQ(via_r.primes, direct.primes) << r.label << " q=" << q;
    }
  }
}

TEST(SieveProperty, ZeroResultantIffIntegerRootInSet) {
  const auto& s = test::fixture();
  for (const auto& r : s.records()) {
    if (r.degree() > 2) continue;
    for (u64 q : odd_primes_upto(23)) {
      if (r.level % q == 0) continue;
      const auto cp = s.coefficient(r.label, q).charpoly();
      std::set<i64> targets(trace_set(PrimeModulus(q)).values.begin(), trace_set(PrimeModulus(q)).values.end());
      targets.insert(static_cast<i64>(q + 1));
      targets.insert(-static_cast<i64>(q + 1));
      bool hit = false;
      for (i64 t : targets) hit = hit || cp(BigInt(t)) == 0;
      ASSERT_EQ(rq_resultant(s, r, q) == 0, hit) << r.label << " q=" << q;
    }
  }
}

TEST(SieveProperty, MoreAuxNeverEnlarges) {
  const auto& s = test::fixture();
  const std::vector<u64> aux{3, 7, 11, 17, 19, 23};
  for (u64 lv : {350ULL, 650ULL, 2600ULL}) {
    const auto forms = s.at_level(lv);
    std::vector<SieveVerdict> prev;
    for (std::size_t k = 1; k <= aux.size(); ++k) {
      const auto cur = run_sieve(s, forms, std::vector<u64>(aux.begin(), aux.begin() + k), 13);
      if (!prev.empty())
        for (std::size_t i = 0; i < cur.size(); ++i) {
          if (prev[i].unbounded) continue;
          ASSERT_FALSE(cur[i].unbounded);
          for (const auto& p : cur[i].survivors)
            ASSERT_TRUE(std::binary_search(prev[i].survivors.begin(), prev[i].survivors.end(), p)) << cur[i].label;
        }
      prev = cur;
    }
  }
}

TEST(SieveProperty, SurvivorsWithinEveryQ) {
  const auto& s = test::fixture();
  for (const auto& v : run_sieve(s, s.at_level(2800), {3, 11, 17, 19, 23, 37}, 13)) {
    for (const auto& p : v.survivors)
      for (const auto& d : v.per_q) {
        if (d.survivors.unbounded) continue;
        EXPECT_TRUE(std::binary_search(d.survivors.primes.begin(), d.survivors.primes.end(), p)) << v.label;
      }
  }
}

TEST(SieveProperty, DeterministicAcrossWorkers) {
  const auto& s = test::fixture();
  const auto forms = s.at_level(5200);
  const auto a = run_sieve(s, forms, {3, 7, 11}, 19, 1), b = run_sieve(s, forms, {3, 7, 11}, 19, 4);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].label, b[i].label);
    EXPECT_EQ(a[i].survivors, b[i].survivors);
    EXPECT_EQ(a[i].unbounded, b[i].unbounded);
  }
}
