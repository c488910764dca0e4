#pragma once

#include "frey/arith.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <sstream>

namespace frey {

using Rational = boost::multiprecision::cpp_rational;

// Coefficients constant term first; no trailing zeros; zero polynomial is empty.
template <class T>
struct Poly {
  std::vector<T> c;

  Poly() = default;
  Poly(std::vector<T> coeffs) : c(std::move(coeffs)) { trim(); }
  Poly(std::initializer_list<T> coeffs) : c(coeffs) { trim(); }

  void trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }
  int degree() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
  const T& lc() const { return c.back(); }
  T coeff(std::size_t i) const { return i < c.size() ? c[i] : T(0); }

  template <class U>
  U operator()(const U& x) const {
    U acc = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + U(*it);
    return acc;
  }

  friend bool operator==(const Poly&, const Poly&) = default;

  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<T> out(std::max(a.c.size(), b.c.size()));
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.coeff(i) + b.coeff(i);
    return Poly(std::move(out));
  }
  friend Poly operator-(const Poly& a, const Poly& b) {
    std::vector<T> out(std::max(a.c.size(), b.c.size()));
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.coeff(i) - b.coeff(i);
    return Poly(std::move(out));
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<T> out(a.c.size() + b.c.size() - 1, T(0));
    for (std::size_t i = 0; i < a.c.size(); ++i)
      for (std::size_t j = 0; j < b.c.size(); ++j) out[i + j] += a.c[i] * b.c[j];
    return Poly(std::move(out));
  }
  friend Poly operator*(const T& k, const Poly& a) {
    std::vector<T> out(a.c);
    for (auto& x : out) x *= k;
    return Poly(std::move(out));
  }

  std::string str(char var = 'x') const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
      const T& k = c[i];
      if (k == 0) continue;
      const bool neg = k < 0;
      const T mag = neg ? T(-k) : k;
      os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
      if (mag != 1 || i == 0) os << mag;
      if (i > 0) os << var;
      if (i > 1) os << '^' << i;
      first = false;
    }
    return os.str();
  }
};

using IntPoly = Poly<BigInt>;
using RatPoly = Poly<Rational>;

inline IntPoly linear(const BigInt& root) { return IntPoly({-root, BigInt(1)}); }

namespace detail {

inline BigInt content(const IntPoly& f) {
  BigInt g = 0;
  for (const auto& x : f.c) g = boost::multiprecision::gcd(g, x);
  return g;
}

inline IntPoly exact_div(IntPoly f, const BigInt& k) {
  for (auto& x : f.c) {
    if (x % k != 0) throw std::logic_error("exact_div: inexact");
    x /= k;
  }
  return f;
}

inline BigInt ipow(BigInt b, unsigned e) {
  BigInt r = 1;
  while (e) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

// lc(b)^(deg a - deg b + 1) * a mod b
inline IntPoly prem(IntPoly a, const IntPoly& b) {
  const int db = b.degree();
  int e = a.degree() - db + 1;
  const BigInt& lb = b.lc();
  while (!a.is_zero() && a.degree() >= db) {
    const int shift = a.degree() - db;
    const BigInt top = a.lc();
    for (auto& x : a.c) x *= lb;
    for (int i = 0; i <= db; ++i) a.c[i + shift] -= top * b.c[i];
    a.trim();
    --e;
  }
  return e > 0 ? IntPoly(ipow(lb, static_cast<unsigned>(e)) * a) : a;
}

}  // namespace detail

// Subresultant PRS (Collins/Brown).
inline BigInt resultant(IntPoly a, IntPoly b) {
  using detail::ipow;
  if (a.is_zero() || b.is_zero()) throw std::invalid_argument("resultant of a zero polynomial");
  if (b.degree() == 0) return ipow(b.lc(), static_cast<unsigned>(a.degree()));
  if (a.degree() == 0) return ipow(a.lc(), static_cast<unsigned>(b.degree()));

  const BigInt ca = detail::content(a), cb = detail::content(b);
  a = detail::exact_div(a, ca);
  b = detail::exact_div(b, cb);
  const BigInt t = ipow(ca, static_cast<unsigned>(b.degree())) * ipow(cb, static_cast<unsigned>(a.degree()));
  int s = 1;
  if (a.degree() < b.degree()) {
    std::swap(a, b);
    if (a.degree() % 2 && b.degree() % 2) s = -s;
  }
  BigInt g = 1, h = 1;
  while (true) {
    const int delta = a.degree() - b.degree();
    if (a.degree() % 2 && b.degree() % 2) s = -s;
    IntPoly r = detail::prem(a, b);
    a = b;
    if (r.is_zero()) return 0;
    b = detail::exact_div(r, g * ipow(h, static_cast<unsigned>(delta)));
    g = a.lc();
    if (delta > 0) h = ipow(g, static_cast<unsigned>(delta)) / ipow(h, static_cast<unsigned>(delta - 1));
    if (b.degree() == 0) break;
  }
  const unsigned da = static_cast<unsigned>(a.degree());
  const BigInt hh = da == 0 ? BigInt(1) : ipow(b.lc(), da) / ipow(h, da - 1);
  return s * t * hh;
}

// Fraction-free (Bareiss) determinant of the Sylvester matrix; a second route for small degrees.
inline BigInt sylvester_resultant(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero() || b.is_zero()) throw std::invalid_argument("resultant of a zero polynomial");
  const int m = a.degree(), n = b.degree();
  const int size = m + n;
  if (size == 0) return 1;
  std::vector<std::vector<BigInt>> M(size, std::vector<BigInt>(size, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= m; ++j) M[i][i + j] = a.c[m - j];
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= n; ++j) M[n + i][i + j] = b.c[n - j];
  int sign = 1;
  BigInt prev = 1;
  for (int k = 0; k < size - 1; ++k) {
    if (M[k][k] == 0) {
      int piv = k + 1;
      while (piv < size && M[piv][k] == 0) ++piv;
      if (piv == size) return 0;
      std::swap(M[k], M[piv]);
      sign = -sign;
    }
    for (int i = k + 1; i < size; ++i)
      for (int j = k + 1; j < size; ++j) M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) / prev;
    prev = M[k][k];
  }
  return sign * M[size - 1][size - 1];
}

namespace detail {

using ModPoly = std::vector<u64>;  // constant first, trimmed

inline void trim(ModPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline ModPoly mod_rem(ModPoly a, const ModPoly& b, u64 l) {
  const u64 inv = invmod(b.back(), l);
  while (a.size() >= b.size()) {
    const u64 k = mulmod(a.back(), inv, l);
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] = submod(a[i + shift], mulmod(k, b[i], l), l);
    trim(a);
  }
  return a;
}

inline ModPoly mod_mulmod(const ModPoly& a, const ModPoly& b, const ModPoly& f, u64 l) {
  if (a.empty() || b.empty()) return {};
  ModPoly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = addmod(out[i + j], mulmod(a[i], b[j], l), l);
  trim(out);
  return mod_rem(std::move(out), f, l);
}

inline ModPoly mod_gcd(ModPoly a, ModPoly b, u64 l) {
  while (!b.empty()) {
    a = mod_rem(std::move(a), b, l);
    std::swap(a, b);
  }
  if (!a.empty()) {
    const u64 inv = invmod(a.back(), l);
    for (auto& x : a) x = mulmod(x, inv, l);
  }
  return a;
}

inline ModPoly mod_div(ModPoly a, const ModPoly& b, u64 l) {
  const u64 inv = invmod(b.back(), l);
  ModPoly quot(a.size() - b.size() + 1, 0);
  while (a.size() >= b.size()) {
    const u64 k = mulmod(a.back(), inv, l);
    const std::size_t shift = a.size() - b.size();
    quot[shift] = k;
    for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] = submod(a[i + shift], mulmod(k, b[i], l), l);
    trim(a);
  }
  return quot;
}

inline ModPoly mod_pow_x(u64 e, const ModPoly& f, u64 l) {
  ModPoly result{1}, base = mod_rem(ModPoly{0, 1}, f, l);
  while (e) {
    if (e & 1) result = mod_mulmod(result, base, f, l);
    base = mod_mulmod(base, base, f, l);
    e >>= 1;
  }
  return result;
}

// Degrees of the irreducible factors of a squarefree monic f mod l.
inline std::vector<int> factor_degrees_mod(ModPoly f, u64 l) {
  std::vector<int> degs;
  ModPoly h{0, 1};
  for (int k = 1; 2 * k <= static_cast<int>(f.size()) - 1; ++k) {
    ModPoly hk{1};
    ModPoly base = mod_rem(h, f, l);
    u64 e = l;
    while (e) {
      if (e & 1) hk = mod_mulmod(hk, base, f, l);
      base = mod_mulmod(base, base, f, l);
      e >>= 1;
    }
    h = hk;
    ModPoly diff = h;
    diff.resize(std::max<std::size_t>(diff.size(), 2), 0);
    diff[1] = submod(diff[1], 1, l);
    trim(diff);
    ModPoly g = mod_gcd(f, diff, l);
    if (g.size() > 1) {
      for (std::size_t i = 0; i < (g.size() - 1) / k; ++i) degs.push_back(k);
      f = mod_div(f, g, l);
      h = mod_rem(h, f, l);
    }
  }
  if (f.size() > 1) degs.push_back(static_cast<int>(f.size()) - 1);
  return degs;
}

}  // namespace detail

// Certifies irreducibility over Q from factorization patterns mod small primes:
// the degrees a rational factor could have must be subset sums of every pattern.
// Returns false when f is reducible or no certificate was found.
inline bool certify_irreducible(const IntPoly& f, int max_primes = 200) {
  const int d = f.degree();
  if (d < 1 || f.lc() != 1) return false;
  if (d == 1) return true;
  std::vector<bool> possible(d, true);
  possible[0] = false;
  int used = 0;
  for (u64 l : detail::small_primes()) {
    if (used >= max_primes) break;
    detail::ModPoly fm;
    for (const auto& x : f.c) fm.push_back(detail::reduce(x, l));
    detail::ModPoly df;
    for (std::size_t i = 1; i < fm.size(); ++i) df.push_back(detail::mulmod(i % l, fm[i], l));
    detail::trim(df);
    if (df.empty() || detail::mod_gcd(fm, df, l).size() != 1) continue;
    ++used;
    std::vector<bool> sums(d + 1, false);
    sums[0] = true;
    for (int k : detail::factor_degrees_mod(fm, l))
      for (int s = d; s >= k; --s)
        if (sums[s - k]) sums[s] = true;
    bool any = false;
    for (int s = 1; s < d; ++s) {
      possible[s] = possible[s] && sums[s];
      any = any || possible[s];
    }
    if (!any) return true;
  }
  return false;
}

inline BigInt common_denominator(const RatPoly& g) {
  BigInt d = 1;
  for (const auto& x : g.c) d = boost::multiprecision::lcm(d, boost::multiprecision::denominator(x));
  return d;
}

inline IntPoly scale_to_int(const RatPoly& g, const BigInt& d) {
  std::vector<BigInt> out;
  for (const auto& x : g.c) {
    const Rational y = x * d;
    if (boost::multiprecision::denominator(y) != 1) throw std::logic_error("scale_to_int: inexact");
    out.push_back(boost::multiprecision::numerator(y));
  }
  return IntPoly(std::move(out));
}

// Res_y(field_poly(y), X - g(y)), sampled at X = 0..d and interpolated exactly.
inline IntPoly charpoly_of_element(const IntPoly& field_poly, const RatPoly& elem) {
  const int d = field_poly.degree();
  if (d < 1 || field_poly.lc() != 1) throw std::invalid_argument("charpoly_of_element: field polynomial must be monic of degree >= 1");
  if (elem.degree() >= d) throw std::invalid_argument("charpoly_of_element: element degree must be below field degree");
  const BigInt den = common_denominator(elem);
  const IntPoly G = scale_to_int(elem, den);
  const BigInt scale = detail::ipow(den, static_cast<unsigned>(d));

  std::vector<Rational> xs, ys;
  for (int i = 0; i <= d; ++i) {
    const IntPoly h = IntPoly({den * i}) - G;
    const BigInt r = h.is_zero() ? BigInt(0) : resultant(field_poly, h);
    xs.emplace_back(i);
    ys.emplace_back(Rational(r, scale));
  }
  // Newton divided differences, then expand.
  std::vector<Rational> coef = ys;
  for (int j = 1; j <= d; ++j)
    for (int i = d; i >= j; --i) coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j]);
  RatPoly acc({coef[d]});
  for (int i = d - 1; i >= 0; --i) acc = acc * RatPoly({-xs[i], Rational(1)}) + RatPoly({coef[i]});

  std::vector<BigInt> out;
  for (int i = 0; i <= d; ++i) {
    const Rational x = acc.coeff(i);
    if (boost::multiprecision::denominator(x) != 1)
      throw std::domain_error("charpoly_of_element: characteristic polynomial is not integral");
    out.push_back(boost::multiprecision::numerator(x));
  }
  IntPoly result(std::move(out));
  if (result.degree() != d || result.lc() != 1) throw std::logic_error("charpoly_of_element: interpolation failed");
  return result;
}

inline BigInt norm_shift(const IntPoly& charpoly, const BigInt& t) {
  const BigInt v = charpoly(t);
  return v < 0 ? BigInt(-v) : v;
}

}  // namespace frey
