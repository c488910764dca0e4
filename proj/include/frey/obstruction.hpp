#pragma once

#include "frey/arith.hpp"
#include "frey/frey.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cstdlib>
#include <numeric>

namespace frey {

using i128 = __int128;

inline unsigned v2(const BigInt& m) {
  if (m == 0) throw std::invalid_argument("v2(0) is undefined");
  return static_cast<unsigned>(lsb(m < 0 ? BigInt(-m) : m));
}

inline std::vector<BigInt> supp(const BigInt& m) {
  if (m == 0) throw std::invalid_argument("supp(0) is undefined");
  std::vector<BigInt> out;
  for (const auto& [p, e] : factor(m < 0 ? BigInt(-m) : m)) out.push_back(p);
  return out;
}

struct ObstructionWitness {
  BigInt d;
  i64 a = 0, b = 0;
  BigInt m;
};

// sin^2(2pi/5) sin^2(4pi/5) = 5/16, bounding |phi(a,b)| >= 0.312 |a|^4.
inline const BigInt& thue_constant_checked() {
  static const BigInt ok = [] {
    using F = boost::multiprecision::cpp_bin_float_100;
    const F pi = boost::math::constants::pi<F>();
    const F s1 = sin(2 * pi / 5), s2 = sin(4 * pi / 5);
    const F prod = s1 * s1 * s2 * s2;
    if (!(prod > F("0.312")) || abs(prod - F(5) / 16) > F("1e-90"))
      throw std::logic_error("Thue constant check failed: box bound is not valid");
    return BigInt(1);
  }();
  return ok;
}

namespace detail {

struct DSupport {
  BigInt d;
  std::vector<u64> outside;  // primes of d other than 2 and 5
  unsigned v2d = 0;
};

inline DSupport d_support(const BigInt& d) {
  if (d <= 0) throw std::invalid_argument("d must be positive");
  DSupport s{d, {}, static_cast<unsigned>(lsb(d))};
  for (const auto& [p, e] : factor(d))
    if (p != 2 && p != 5) s.outside.push_back(p.convert_to<u64>());
  return s;
}

template <class Int>
unsigned v2_int(Int x) {
  if (x < 0) x = -x;
  unsigned e = 0;
  while (x % 2 == 0) {
    x /= 2;
    ++e;
  }
  return e;
}

template <class Int>
bool obstruction_core(const DSupport& ds, Int a, Int b) {
  const Int m = a * a * a * a * a + b * b * b * b * b;
  if (m == 0) return false;
  Int r = m < 0 ? Int(-m) : m;
  while (r % 2 == 0) r /= 2;
  while (r % 5 == 0) r /= 5;
  for (u64 l : ds.outside) {
    const Int li = Int(l);
    if (r % li != 0) return false;
    while (r % li == 0) r /= li;
  }
  if (r != 1) return false;

  const bool ab_nonzero = a != 0 && b != 0;
  const bool within_25 = ds.outside.empty();
  const bool d_even = ds.v2d > 0;
  const unsigned vm = v2_int(m);
  if (!within_25 && !ab_nonzero) return false;
  if (within_25 && d_even && !ab_nonzero) return false;
  if (!d_even && vm == 2) return false;
  if (ds.v2d == 1) {
    // v2(0) counts as infinite
    const bool max_is_one = ab_nonzero && std::max(v2_int(a), v2_int(b)) == 1;
    if (!(vm >= 3 || vm == 1 || (vm == 0 && max_is_one))) return false;
  }
  if (ds.v2d == 2 && vm != 2) return false;
  if (ds.v2d >= 3 && vm < 3) return false;
  return true;
}

inline bool obstruction_pair(const DSupport& ds, i64 a, i64 b) {
  if (std::gcd(a, b) != 1) throw std::invalid_argument("is_obstruction_pair: a and b must be coprime");
  const i64 lim = 10000000;
  if (std::abs(a) <= lim && std::abs(b) <= lim) return obstruction_core<i128>(ds, a, b);
  return obstruction_core<BigInt>(ds, BigInt(a), BigInt(b));
}

}  // namespace detail

inline bool is_obstruction_pair(const BigInt& d, i64 a, i64 b) {
  return detail::obstruction_pair(detail::d_support(d), a, b);
}

inline BigInt fifth_power_sum(i64 a, i64 b) {
  const BigInt x(a), y(b);
  return x * x * x * x * x + y * y * y * y * y;
}

// Smallest B with 0.312 B^4 >= |A|.
inline i64 thue_box_bound(const BigInt& A) {
  thue_constant_checked();
  const BigInt target = 1000 * (A < 0 ? BigInt(-A) : A);
  i64 B = 0;
  while (BigInt(312) * B * B * B * B < target) ++B;
  return B;
}

inline std::vector<std::pair<i64, i64>> thue_phi_solutions(const BigInt& A, i64 box = -1) {
  if (A == 0) throw std::invalid_argument("thue_phi_solutions: A must be nonzero");
  const i64 B = box >= 0 ? box : thue_box_bound(A);
  std::vector<std::pair<i64, i64>> out;
  for (i64 a = -B; a <= B; ++a)
    for (i64 b = -B; b <= B; ++b) {
      if (std::gcd(a, b) != 1) continue;
      if (phi(BigInt(a), BigInt(b)) == A) out.emplace_back(a, b);
    }
  return out;
}

struct LemmaVerdict {
  bool obstructed = false;
  std::optional<ObstructionWitness> witness;
};

inline bool is_five_power_times_one_or_two(BigInt d) {
  if (d % 2 == 0) d /= 2;
  while (d % 5 == 0) d /= 5;
  return d == 1;
}

inline LemmaVerdict lemma_classify(const BigInt& d) {
  if (d <= 0) throw std::invalid_argument("lemma_classify: d must be positive");
  for (const auto& [l, e] : factor(d))
    if (l % 5 == 1) throw std::invalid_argument("lemma_classify: " + l.str() + " divides d and is 1 mod 5");
  LemmaVerdict v;
  v.obstructed = is_five_power_times_one_or_two(d);
  if (v.obstructed) v.witness = ObstructionWitness{d, 1, 1, BigInt(2)};

  // An obstruction pair has phi(a,b) in {+-1, +-5}; recheck through the Thue route.
  const auto ds = detail::d_support(d);
  bool thue = false;
  for (int A : {1, -1, 5, -5})
    for (const auto& [a, b] : thue_phi_solutions(BigInt(A)))
      thue = thue || detail::obstruction_pair(ds, a, b);
  if (thue != v.obstructed) throw std::logic_error("lemma_classify: Thue enumeration disagrees for d = " + d.str());
  if (v.witness && !detail::obstruction_pair(ds, v.witness->a, v.witness->b))
    throw std::logic_error("lemma_classify: witness fails the definition");
  return v;
}

// Semi-decision: scans coprime pairs by (|a|+|b|, a, b); absence proves nothing.
inline std::optional<ObstructionWitness> search_obstruction(const BigInt& d, i64 height) {
  if (height < 1) throw std::invalid_argument("search_obstruction: height must be positive");
  const auto ds = detail::d_support(d);
  for (i64 s = 1; s <= 2 * height; ++s)
    for (i64 a = -std::min(s, height); a <= std::min(s, height); ++a) {
      const i64 rest = s - std::abs(a);
      if (rest > height) continue;
      for (i64 b : {-rest, rest}) {
        if (rest == 0 && b < 0) continue;
        if (std::gcd(a, b) != 1) continue;
        if (detail::obstruction_pair(ds, a, b)) return ObstructionWitness{d, a, b, fifth_power_sum(a, b)};
      }
    }
  return std::nullopt;
}

}  // namespace frey
