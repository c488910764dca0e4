#pragma once

#include "frey/arith.hpp"

#include <array>
#include <cmath>
#include <iterator>
#include <random>
#include <unordered_map>

namespace frey {

inline constexpr u64 kDefaultNaiveThreshold = 65536;
// Below this the Hasse interval may hold several group-order candidates for every point.
inline constexpr u64 kBsgsMinPrime = 229;

enum class CountMethod { naive, bsgs };

// y^2 = x^3 + a2 x^2 + a4 x + a6 over F_q
struct WeierstrassCurve {
  FieldElement a2, a4, a6;

  WeierstrassCurve(FieldElement a2_, FieldElement a4_, FieldElement a6_) : a2(a2_), a4(a4_), a6(a6_) {
    if (!(a2.modulus() == a4.modulus()) || !(a2.modulus() == a6.modulus()))
      throw std::invalid_argument("curve coefficients over different moduli");
  }
  static WeierstrassCurve from_signed(i64 a2, i64 a4, i64 a6, PrimeModulus q) {
    return {FieldElement::from_signed(a2, q), FieldElement::from_signed(a4, q), FieldElement::from_signed(a6, q)};
  }
  PrimeModulus modulus() const { return a2.modulus(); }
};

struct GlobalCurveModel {
  std::array<BigInt, 5> a;  // a1, a2, a3, a4, a6

  BigInt discriminant() const {
    const auto& [a1, a2, a3, a4, a6] = a;
    const BigInt b2 = a1 * a1 + 4 * a2;
    const BigInt b4 = 2 * a4 + a1 * a3;
    const BigInt b6 = a3 * a3 + 4 * a6;
    const BigInt b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    return -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6;
  }
};

inline FieldElement discriminant(const WeierstrassCurve& c) {
  const auto q = c.modulus();
  const FieldElement k4(4, q), k16(16, q), k18(18, q), k27(27, q);
  const auto &a2 = c.a2, &a4 = c.a4, &a6 = c.a6;
  if (a6.is_zero()) return k16 * a4 * a4 * (a2 * a2 - k4 * a4);
  const FieldElement inner =
      k4 * a2 * a2 * a2 * a6 - a2 * a2 * a4 * a4 - k18 * a2 * a4 * a6 + k4 * a4 * a4 * a4 + k27 * a6 * a6;
  return -(k16 * inner);
}

inline bool is_singular(const WeierstrassCurve& c) { return discriminant(c).is_zero(); }

namespace detail {

struct RawCurve {
  u64 q, a2, a4, a6;

  u64 rhs(u64 x) const { return addmod(mulmod(addmod(mulmod(addmod(x, a2, q), x, q), a4, q), x, q), a6, q); }
};

inline RawCurve raw(const WeierstrassCurve& c) {
  return {c.modulus().value(), c.a2.value(), c.a4.value(), c.a6.value()};
}

inline u64 count_naive(const RawCurve& c) {
  const u64 q = c.q;
  u64 n = 1;
  if (q <= (u64{1} << 26)) {
    std::vector<signed char> chi(q, -1);
    chi[0] = 0;
    for (u64 x = 1; x <= q / 2; ++x) chi[mulmod(x, x, q)] = 1;
    for (u64 x = 0; x < q; ++x) n += 1 + chi[c.rhs(x)];
  } else {
    for (u64 x = 0; x < q; ++x) n += 1 + legendre(c.rhs(x), q);
  }
  return n;
}

struct Point {
  u64 x = 0, y = 0;
  bool inf = true;
  friend bool operator==(const Point&, const Point&) = default;
};

inline Point neg(const RawCurve& c, Point p) {
  if (!p.inf) p.y = p.y ? c.q - p.y : 0;
  return p;
}

inline Point add(const RawCurve& c, const Point& p, const Point& r) {
  if (p.inf) return r;
  if (r.inf) return p;
  const u64 q = c.q;
  u64 lambda;
  if (p.x == r.x) {
    if (addmod(p.y, r.y, q) == 0) return {};
    const u64 num = addmod(addmod(mulmod(3, mulmod(p.x, p.x, q), q), mulmod(mulmod(2, c.a2, q), p.x, q), q), c.a4, q);
    lambda = mulmod(num, invmod(mulmod(2, p.y, q), q), q);
  } else {
    lambda = mulmod(submod(r.y, p.y, q), invmod(submod(r.x, p.x, q), q), q);
  }
  const u64 x3 = submod(submod(submod(mulmod(lambda, lambda, q), c.a2, q), p.x, q), r.x, q);
  const u64 y3 = submod(mulmod(lambda, submod(p.x, x3, q), q), p.y, q);
  return {x3, y3, false};
}

inline Point mul(const RawCurve& c, Point p, u64 k) {
  Point acc;
  while (k) {
    if (k & 1) acc = add(c, acc, p);
    p = add(c, p, p);
    k >>= 1;
  }
  return acc;
}

inline u64 isqrt(u64 n) {
  u64 r = static_cast<u64>(std::sqrt(static_cast<long double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

// All N in [lo, lo + width] with N*P = O.
inline std::vector<u64> annihilators(const RawCurve& c, const Point& P, u64 lo, u64 width) {
  u64 m = isqrt(width + 1);
  if (m * m < width + 1) ++m;
  std::unordered_map<u64, std::vector<std::pair<u64, u64>>> baby;  // x -> (y, j)
  Point jp;
  u64 order = 0;
  for (u64 j = 0; j < m; ++j) {
    if (j > 0 && jp.inf) {
      order = j;
      break;
    }
    baby[jp.inf ? c.q : jp.x].emplace_back(jp.inf ? 0 : jp.y, j);
    jp = add(c, jp, P);
  }
  std::vector<u64> out;
  if (order) {
    for (u64 n = (lo + order - 1) / order * order; n <= lo + width; n += order) out.push_back(n);
    return out;
  }
  const Point step = neg(c, mul(c, P, m));
  Point g = neg(c, mul(c, P, lo));
  for (u64 k = 0; k * m <= width; ++k, g = add(c, g, step)) {
    auto it = baby.find(g.inf ? c.q : g.x);
    if (it == baby.end()) continue;
    for (const auto& [y, j] : it->second)
      if (g.inf || y == g.y) {
        const u64 t = k * m + j;
        if (t <= width) out.push_back(lo + t);
      }
  }
  return out;
}

inline std::optional<Point> random_point(const RawCurve& c, std::mt19937_64& rng) {
  for (int tries = 0; tries < 64; ++tries) {
    const u64 x = rng() % c.q;
    const u64 f = c.rhs(x);
    if (auto y = sqrt_mod(f, c.q)) return Point{x, (rng() & 1) ? *y : (*y ? c.q - *y : 0), false};
  }
  return std::nullopt;
}

inline void intersect(std::vector<u64>& acc, std::vector<u64> cand, bool& first) {
  std::sort(cand.begin(), cand.end());
  if (first) {
    acc = std::move(cand);
    first = false;
    return;
  }
  std::vector<u64> out;
  std::set_intersection(acc.begin(), acc.end(), cand.begin(), cand.end(), std::back_inserter(out));
  acc = std::move(out);
}

// Order-finding in the Hasse interval; ambiguity is resolved with more points on
// the curve and on its quadratic twist (Mestre).
inline u64 count_bsgs(const RawCurve& c) {
  const u64 q = c.q;
  const u64 w = isqrt(4 * q);
  const u64 lo = q + 1 - w, width = 2 * w;
  u64 u = 2;
  while (legendre(u, q) != -1) ++u;
  const RawCurve tw{q, mulmod(u, c.a2, q), mulmod(mulmod(u, u, q), c.a4, q), mulmod(mulmod(mulmod(u, u, q), u, q), c.a6, q)};

  std::mt19937_64 rng(q * 0x9E3779B97F4A7C15ULL ^ c.a2 * 31 ^ c.a4 * 1009 ^ c.a6 * 65537);
  std::vector<u64> cand;
  bool first = true;
  for (int round = 0; round < 400; ++round) {
    const bool twist = (round % 4) == 3;
    const RawCurve& cur = twist ? tw : c;
    auto P = random_point(cur, rng);
    if (!P) continue;
    auto ann = annihilators(cur, *P, lo, width);
    if (twist)
      for (auto& n : ann) n = 2 * q + 2 - n;
    intersect(cand, std::move(ann), first);
    if (cand.size() == 1) return cand.front();
    if (cand.empty()) throw std::logic_error("bsgs: inconsistent group order candidates");
  }
  throw std::runtime_error("bsgs: could not isolate the group order");
}

}  // namespace detail

inline u64 count_points(const WeierstrassCurve& c, CountMethod method) {
  if (is_singular(c)) throw std::domain_error("count_points: singular curve");
  const auto r = detail::raw(c);
  if (method == CountMethod::naive || r.q < kBsgsMinPrime) return detail::count_naive(r);
  return detail::count_bsgs(r);
}

inline i64 trace(const WeierstrassCurve& c, u64 naive_threshold = kDefaultNaiveThreshold) {
  const u64 q = c.modulus().value();
  const auto method = q < naive_threshold ? CountMethod::naive : CountMethod::bsgs;
  return static_cast<i64>(q + 1) - static_cast<i64>(count_points(c, method));
}

inline int hasse_bound(u64 q) { return static_cast<int>(detail::isqrt(4 * q)); }

// Completes the square to drop a1, a3 (q odd).
inline WeierstrassCurve reduce_global(const GlobalCurveModel& m, PrimeModulus q) {
  if (m.discriminant() % q.value() == 0)
    throw std::domain_error("reduce_global: bad reduction at " + std::to_string(q.value()));
  auto f = [&](const BigInt& v) { return FieldElement::from_integer(v, q); };
  const auto& [a1, a2, a3, a4, a6] = m.a;
  const FieldElement inv2 = FieldElement(2, q).inverse(), inv4 = FieldElement(4, q).inverse();
  return {f(a2) + f(a1 * a1) * inv4, f(a4) + f(a1 * a3) * inv2, f(a6) + f(a3 * a3) * inv4};
}

}  // namespace frey
