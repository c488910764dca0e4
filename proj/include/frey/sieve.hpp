#pragma once

#include "frey/frey.hpp"
#include "frey/newforms.hpp"

#include <atomic>

namespace frey {

// (X^2 - (q+1)^2) * prod_{v in ts} (X - v)
inline IntPoly pq_poly(PrimeModulus q, const TraceSet& ts) {
  if (ts.q != q.value()) throw std::invalid_argument("pq_poly: trace set belongs to another prime");
  const BigInt q1 = BigInt(q.value()) + 1;
  IntPoly out({-q1 * q1, BigInt(0), BigInt(1)});
  for (i64 v : ts.values) out = out * linear(BigInt(v));
  return out;
}

inline BigInt rq_resultant(const NewformStore& store, const NewformRecord& f, u64 q) {
  const PrimeModulus qm(q);
  return resultant(store.coefficient(f.label, q).charpoly(), pq_poly(qm, trace_set(qm)));
}

struct SurvivorSet {
  bool unbounded = false;
  std::vector<BigInt> primes;      // sorted
  std::vector<BigInt> unresolved;  // cofactors whose prime divisors >= p_min are unknown
};

struct QDetail {
  u64 q = 0;
  BigInt rq;
  SurvivorSet survivors;
};

struct SieveVerdict {
  std::string label;
  u64 level = 0;
  std::vector<u64> aux_primes;
  std::vector<u64> skipped;  // aux primes dividing the level
  bool unbounded = false;
  std::vector<BigInt> survivors;
  std::vector<BigInt> unresolved;
  std::vector<QDetail> per_q;

  bool eliminated() const { return !unbounded && survivors.empty() && unresolved.empty(); }
};

namespace detail {

inline void add_prime(std::vector<BigInt>& v, const BigInt& p) {
  auto it = std::lower_bound(v.begin(), v.end(), p);
  if (it == v.end() || *it != p) v.insert(it, p);
}

inline SurvivorSet survivors_from_value(const BigInt& value, u64 q, const BigInt& p_min, std::size_t rho_budget) {
  SurvivorSet s;
  const BigInt v = value < 0 ? BigInt(-value) : value;
  if (v == 0) {
    s.unbounded = true;
    return s;
  }
  auto fac = factor_partial(v, rho_budget);
  for (const auto& [p, e] : fac.primes)
    if (p >= p_min) add_prime(s.primes, p);
  s.unresolved = std::move(fac.unresolved);
  if (BigInt(q) >= p_min) add_prime(s.primes, BigInt(q));
  return s;
}

}  // namespace detail

inline SurvivorSet survivors_for_q(const NewformStore& store, const NewformRecord& f, u64 q, const BigInt& p_min,
                                   std::size_t rho_budget = 1u << 22) {
  return detail::survivors_from_value(rq_resultant(store, f, q), q, p_min, rho_budget);
}

// Rational forms only: factors |a -/+ (q+1)| and |a - v| separately instead of R_q.
inline SurvivorSet survivors_direct(i64 a, u64 q, const TraceSet& ts, const BigInt& p_min) {
  const i64 q1 = static_cast<i64>(q) + 1;
  std::vector<i64> values{a - q1, a + q1};
  for (i64 v : ts.values) values.push_back(a - v);
  SurvivorSet s;
  for (i64 v : values) {
    auto part = detail::survivors_from_value(BigInt(v), q, p_min, 1u << 22);
    if (part.unbounded) return part;
    for (const auto& p : part.primes) detail::add_prime(s.primes, p);
  }
  if (BigInt(q) >= p_min) detail::add_prime(s.primes, BigInt(q));
  return s;
}

namespace detail {

inline bool divides_any(const BigInt& p, const std::vector<BigInt>& cofactors) {
  for (const auto& c : cofactors)
    if (c % p == 0) return true;
  return false;
}

// Survivor intersection; unbounded sets act as the universe.
inline void intersect(SieveVerdict& v, const SurvivorSet& s, bool& first) {
  if (s.unbounded) return;
  if (first) {
    v.survivors = s.primes;
    v.unresolved = s.unresolved;
    first = false;
    return;
  }
  std::vector<BigInt> kept;
  for (const auto& p : v.survivors)
    if (std::binary_search(s.primes.begin(), s.primes.end(), p) || divides_any(p, s.unresolved)) kept.push_back(p);
  for (const auto& p : s.primes)
    if (divides_any(p, v.unresolved)) add_prime(kept, p);
  std::vector<BigInt> open;
  for (const auto& c : v.unresolved)
    for (const auto& d : s.unresolved) {
      const BigInt g = boost::multiprecision::gcd(c, d);
      if (g > 1) open.push_back(g);
    }
  std::sort(open.begin(), open.end());
  open.erase(std::unique(open.begin(), open.end()), open.end());
  v.survivors = std::move(kept);
  v.unresolved = std::move(open);
}

}  // namespace detail

inline SieveVerdict sieve_form(const NewformStore& store, const NewformRecord& f, const std::vector<u64>& aux,
                               const BigInt& p_min, std::size_t rho_budget = 1u << 22) {
  SieveVerdict v;
  v.label = f.label;
  v.level = f.level;
  v.aux_primes = aux;
  bool first = true;
  for (u64 q : aux) {
    if (f.level % q == 0) {
      v.skipped.push_back(q);
      continue;
    }
    QDetail d;
    d.q = q;
    d.rq = rq_resultant(store, f, q);
    d.survivors = detail::survivors_from_value(d.rq, q, p_min, rho_budget);
    detail::intersect(v, d.survivors, first);
    v.per_q.push_back(std::move(d));
  }
  v.unbounded = first;
  return v;
}

inline std::vector<SieveVerdict> run_sieve(const NewformStore& store, const std::vector<const NewformRecord*>& forms,
                                           const std::vector<u64>& aux, const BigInt& p_min, unsigned workers = 1,
                                           std::size_t rho_budget = 1u << 22) {
  for (std::size_t i = 0; i < aux.size(); ++i) {
    PrimeModulus check(aux[i]);
    if (aux[i] == 5) throw std::invalid_argument("aux prime 5 is excluded");
    for (std::size_t j = 0; j < i; ++j)
      if (aux[i] == aux[j]) throw std::invalid_argument("aux primes must be distinct");
  }
  for (u64 q : aux) trace_set(PrimeModulus(q));
  std::vector<SieveVerdict> out(forms.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex fail_mu;
  auto work = [&] {
    for (std::size_t i; (i = next++) < forms.size();) {
      try {
        out[i] = sieve_form(store, *forms[i], aux, p_min, rho_budget);
      } catch (...) {
        std::lock_guard lock(fail_mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(forms.size())));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace frey
