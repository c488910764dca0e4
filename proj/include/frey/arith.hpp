#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace frey {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using BigInt = boost::multiprecision::cpp_int;

namespace detail {

inline u64 mulmod(u64 a, u64 b, u64 m) {
  if (m <= 0xffffffffULL) return a * b % m;
  return static_cast<u64>(static_cast<u128>(a) * b % m);
}

inline u64 addmod(u64 a, u64 b, u64 m) {
  const u64 s = a + b;
  return (s >= m || s < a) ? s - m : s;
}

inline u64 submod(u64 a, u64 b, u64 m) { return a >= b ? a - b : a + (m - b); }

inline u64 powmod(u64 b, u64 e, u64 m) {
  u64 r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

// a must be a unit mod m
inline u64 invmod(u64 a, u64 m) {
  i64 t = 0, nt = 1;
  u64 r = m, nr = a % m;
  while (nr) {
    const u64 qt = r / nr;
    const i64 tmp = t - static_cast<i64>(qt) * nt;
    t = nt;
    nt = tmp;
    const u64 rr = r - qt * nr;
    r = nr;
    nr = rr;
  }
  if (r != 1) throw std::domain_error("invmod: not invertible");
  return t < 0 ? static_cast<u64>(t + static_cast<i64>(m)) : static_cast<u64>(t);
}

inline u64 reduce(i64 x, u64 m) {
  const i64 r = x % static_cast<i64>(m);
  return static_cast<u64>(r < 0 ? r + static_cast<i64>(m) : r);
}

inline u64 reduce(const BigInt& x, u64 m) {
  BigInt r = x % m;
  if (r < 0) r += m;
  return r.convert_to<u64>();
}

inline int legendre(u64 a, u64 q) {
  a %= q;
  if (a == 0) return 0;
  return powmod(a, (q - 1) / 2, q) == 1 ? 1 : -1;
}

// Tonelli-Shanks; returns the root in [0, q/2]
inline std::optional<u64> sqrt_mod(u64 a, u64 q) {
  a %= q;
  if (a == 0) return u64{0};
  if (q == 2) return a;
  if (legendre(a, q) != 1) return std::nullopt;
  u64 r;
  if (q % 4 == 3) {
    r = powmod(a, (q + 1) / 4, q);
  } else {
    u64 s = 0, odd = q - 1;
    while (!(odd & 1)) {
      odd >>= 1;
      ++s;
    }
    u64 z = 2;
    while (legendre(z, q) != -1) ++z;
    u64 m = s, c = powmod(z, odd, q), t = powmod(a, odd, q);
    r = powmod(a, (odd + 1) / 2, q);
    while (t != 1) {
      u64 i = 0, tt = t;
      while (tt != 1) {
        tt = mulmod(tt, tt, q);
        ++i;
      }
      u64 b = c;
      for (u64 j = 0; j + 1 < m - i; ++j) b = mulmod(b, b, q);
      m = i;
      c = mulmod(b, b, q);
      t = mulmod(t, c, q);
      r = mulmod(r, b, q);
    }
  }
  return std::min(r, q - r);
}

inline const std::vector<u64>& small_primes() {
  static const std::vector<u64> table = [] {
    constexpr u64 bound = 1u << 16;
    std::vector<bool> composite(bound, false);
    std::vector<u64> out;
    for (u64 i = 2; i < bound; ++i) {
      if (composite[i]) continue;
      out.push_back(i);
      for (u64 j = i * i; j < bound; j += i) composite[j] = true;
    }
    return out;
  }();
  return table;
}

inline u64 gcd_u64(u64 a, u64 b) {
  while (b) {
    a %= b;
    std::swap(a, b);
  }
  return a;
}

// Brent's variant; returns 0 if the budget runs out
inline u64 rho_u64(u64 n, u64 c, std::size_t budget) {
  auto f = [&](u64 x) { return addmod(mulmod(x, x, n), c, n); };
  u64 y = 2, x = 2, g = 1, q = 1, ys = 2;
  const u64 m = 128;
  u64 r = 1;
  std::size_t steps = 0;
  while (g == 1) {
    x = y;
    for (u64 i = 0; i < r; ++i) y = f(y);
    u64 k = 0;
    while (k < r && g == 1) {
      ys = y;
      for (u64 i = 0; i < std::min(m, r - k); ++i) {
        y = f(y);
        q = mulmod(q, x > y ? x - y : y - x, n);
      }
      g = gcd_u64(q, n);
      k += m;
      steps += m;
      if (steps > budget) return 0;
    }
    r *= 2;
  }
  if (g == n) {
    do {
      ys = f(ys);
      g = gcd_u64(x > ys ? x - ys : ys - x, n);
    } while (g == 1);
  }
  return g == n ? 0 : g;
}

inline BigInt rho_big(const BigInt& n, unsigned c, std::size_t budget) {
  auto f = [&](const BigInt& x) { return (x * x + c) % n; };
  BigInt y = 2, x = 2, g = 1, q = 1, ys = 2;
  const std::size_t m = 128;
  std::size_t r = 1, steps = 0;
  while (g == 1) {
    x = y;
    for (std::size_t i = 0; i < r; ++i) y = f(y);
    std::size_t k = 0;
    while (k < r && g == 1) {
      ys = y;
      for (std::size_t i = 0; i < std::min(m, r - k); ++i) {
        y = f(y);
        q = (q * (x > y ? BigInt(x - y) : BigInt(y - x))) % n;
      }
      g = boost::multiprecision::gcd(q, n);
      k += m;
      steps += m;
      if (steps > budget) return 0;
    }
    r *= 2;
  }
  if (g == n) {
    do {
      ys = f(ys);
      g = boost::multiprecision::gcd(x > ys ? BigInt(x - ys) : BigInt(ys - x), n);
    } while (g == 1);
  }
  return g == n ? BigInt(0) : g;
}

}  // namespace detail

// Deterministic for every 64-bit input (Sinclair's seven bases).
inline bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37})
    if (n % p == 0) return n == p;
  u64 d = n - 1;
  int s = 0;
  while (!(d & 1)) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2ULL, 325ULL, 9375ULL, 28178ULL, 450775ULL, 9780504ULL, 1795265022ULL}) {
    u64 x = detail::powmod(a % n, d, n);
    if (x == 0 || x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = detail::mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

// Exact below 2^64; Miller-Rabin on the first 24 prime bases above.
inline bool is_prime(const BigInt& n) {
  if (n < 2) return false;
  if (n <= std::numeric_limits<u64>::max()) return is_prime(n.convert_to<u64>());
  for (u64 p : detail::small_primes()) {
    if (p > 2000) break;
    if (n % p == 0) return false;
  }
  BigInt d = n - 1;
  unsigned s = 0;
  while (!bit_test(d, 0)) {
    d >>= 1;
    ++s;
  }
  const auto& sp = detail::small_primes();
  for (std::size_t i = 0; i < 24; ++i) {
    BigInt x = boost::multiprecision::powm(BigInt(sp[i]), d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = x * x % n;
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

using PrimePowers = std::vector<std::pair<BigInt, unsigned>>;

struct Factorization {
  PrimePowers primes;
  std::vector<BigInt> unresolved;  // composite cofactors Pollard rho could not split

  bool complete() const { return unresolved.empty(); }
};

inline Factorization factor_partial(BigInt n, std::size_t rho_budget = 1u << 22) {
  if (n < 1) throw std::invalid_argument("factor: n must be positive");
  Factorization out;
  std::vector<BigInt> found;
  for (u64 p : detail::small_primes()) {
    if (BigInt(p) * p > n) break;
    while (n % p == 0) {
      found.emplace_back(p);
      n /= p;
    }
  }
  std::vector<BigInt> stack;
  if (n > 1) stack.push_back(n);
  while (!stack.empty()) {
    BigInt m = stack.back();
    stack.pop_back();
    const u64 tb = detail::small_primes().back();
    if (m < BigInt(tb) * tb || is_prime(m)) {
      found.push_back(m);
      continue;
    }
    BigInt d = 0;
    for (unsigned c = 1; c <= 8 && d == 0; ++c) {
      if (m <= std::numeric_limits<u64>::max())
        d = detail::rho_u64(m.convert_to<u64>(), c, rho_budget);
      else
        d = detail::rho_big(m, c, rho_budget);
    }
    if (d == 0) {
      out.unresolved.push_back(m);
      continue;
    }
    stack.push_back(d);
    stack.push_back(m / d);
  }
  std::sort(found.begin(), found.end());
  for (const auto& p : found) {
    if (!out.primes.empty() && out.primes.back().first == p)
      ++out.primes.back().second;
    else
      out.primes.emplace_back(p, 1u);
  }
  std::sort(out.unresolved.begin(), out.unresolved.end());
  return out;
}

inline PrimePowers factor(const BigInt& n) {
  auto f = factor_partial(n);
  if (!f.complete()) throw std::runtime_error("factor: Pollard rho stalled on " + f.unresolved.front().str());
  return std::move(f.primes);
}

inline std::vector<std::pair<u64, unsigned>> factor_u64(u64 n) {
  std::vector<std::pair<u64, unsigned>> out;
  for (const auto& [p, e] : factor(BigInt(n))) out.emplace_back(p.convert_to<u64>(), e);
  return out;
}

class PrimeModulus {
 public:
  explicit PrimeModulus(u64 q) : q_(q) {
    if (q % 2 == 0 || !is_prime(q)) throw std::invalid_argument("modulus " + std::to_string(q) + " is not an odd prime");
  }
  u64 value() const { return q_; }
  friend bool operator==(PrimeModulus a, PrimeModulus b) { return a.q_ == b.q_; }

 private:
  u64 q_;
};

class FieldElement {
 public:
  FieldElement(u64 v, PrimeModulus m) : v_(v % m.value()), m_(m) {}
  static FieldElement from_signed(i64 v, PrimeModulus m) { return {detail::reduce(v, m.value()), m}; }
  static FieldElement from_integer(const BigInt& v, PrimeModulus m) { return {detail::reduce(v, m.value()), m}; }

  u64 value() const { return v_; }
  PrimeModulus modulus() const { return m_; }
  bool is_zero() const { return v_ == 0; }

  FieldElement operator+(const FieldElement& o) const { return {detail::addmod(v_, same(o), q()), m_}; }
  FieldElement operator-(const FieldElement& o) const { return {detail::submod(v_, same(o), q()), m_}; }
  FieldElement operator*(const FieldElement& o) const { return {detail::mulmod(v_, same(o), q()), m_}; }
  FieldElement operator/(const FieldElement& o) const { return *this * o.inverse(); }
  FieldElement operator-() const { return {v_ ? q() - v_ : 0, m_}; }
  FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
  FieldElement& operator-=(const FieldElement& o) { return *this = *this - o; }
  FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }

  FieldElement pow(u64 e) const { return {detail::powmod(v_, e, q()), m_}; }
  FieldElement inverse() const {
    if (v_ == 0) throw std::domain_error("inverse of zero");
    return {detail::invmod(v_, q()), m_};
  }

  friend bool operator==(const FieldElement& a, const FieldElement& b) { return a.v_ == b.v_ && a.m_ == b.m_; }

 private:
  u64 q() const { return m_.value(); }
  u64 same(const FieldElement& o) const {
    if (!(o.m_ == m_)) throw std::invalid_argument("field elements over different moduli");
    return o.v_;
  }

  u64 v_;
  PrimeModulus m_;
};

inline int legendre(const FieldElement& a) { return detail::legendre(a.value(), a.modulus().value()); }

inline std::optional<u64> sqrt_mod(const FieldElement& a) { return detail::sqrt_mod(a.value(), a.modulus().value()); }

inline FieldElement primitive_root(PrimeModulus m) {
  const u64 q = m.value();
  const auto fac = factor_u64(q - 1);
  for (u64 g = 2;; ++g) {
    bool ok = true;
    for (const auto& [l, e] : fac)
      if (detail::powmod(g, (q - 1) / l, q) == 1) {
        ok = false;
        break;
      }
    if (ok) return {g, m};
  }
}

inline std::vector<FieldElement> roots_of_unity(u64 n, PrimeModulus m) {
  const u64 q = m.value();
  if (n == 0 || (q - 1) % n) throw std::invalid_argument("roots_of_unity: n must divide q-1");
  const FieldElement z = primitive_root(m).pow((q - 1) / n);
  std::vector<u64> vals;
  vals.reserve(n);
  FieldElement acc(1, m);
  for (u64 i = 0; i < n; ++i, acc *= z) vals.push_back(acc.value());
  std::sort(vals.begin(), vals.end());
  std::vector<FieldElement> out;
  out.reserve(n);
  for (u64 v : vals) out.emplace_back(v, m);
  return out;
}

}  // namespace frey
