#pragma once

#include "frey/curves.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <shared_mutex>
#include <thread>

namespace frey {

template <class R>
R phi(const R& a, const R& b) {
  const R a2 = a * a, b2 = b * b;
  return a2 * a2 - a2 * a * b + a2 * b2 - a * b2 * b + b2 * b2;
}

struct FreyParams {
  FieldElement a, b;

  FreyParams(FieldElement a_, FieldElement b_) : a(a_), b(b_) {
    const u64 q = a.modulus().value();
    if (!(a.modulus() == b.modulus())) throw std::invalid_argument("FreyParams: mismatched moduli");
    if (q == 5) throw std::invalid_argument("FreyParams: q must avoid 2 and 5");
    if (a.is_zero() && b.is_zero()) throw std::invalid_argument("FreyParams: (a,b) = (0,0)");
  }
};

// y^2 = x^3 - 5(a^2+b^2) x^2 + 5 phi(a,b) x
inline WeierstrassCurve frey_curve(const FreyParams& p) {
  const auto q = p.a.modulus();
  const FieldElement five(5, q);
  return {-(five * (p.a * p.a + p.b * p.b)), five * phi(p.a, p.b), FieldElement(0, q)};
}

struct TraceSet {
  u64 q = 0;
  std::vector<i64> values;

  bool contains(i64 v) const { return std::binary_search(values.begin(), values.end(), v); }
  friend bool operator==(const TraceSet&, const TraceSet&) = default;
};

// Representatives (1:t) and (0:1) of P^1(F_q); traces are invariant under scaling.
inline TraceSet compute_trace_set(PrimeModulus q, unsigned workers = 1, u64 naive_threshold = kDefaultNaiveThreshold) {
  const u64 qv = q.value();
  if (qv == 5) throw std::invalid_argument("trace_set: q must avoid 2 and 5");
  auto scan = [&](u64 begin, u64 end, std::set<i64>& out) {
    for (u64 t = begin; t < end; ++t) {
      const FreyParams fp = t == qv ? FreyParams({0, q}, {1, q}) : FreyParams({1, q}, {t, q});
      const auto c = frey_curve(fp);
      if (!is_singular(c)) out.insert(trace(c, naive_threshold));
    }
  };
  const u64 total = qv + 1;
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(total / 64 + 1)));
  std::vector<std::set<i64>> parts(workers);
  if (workers == 1) {
    scan(0, total, parts[0]);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back(scan, total * w / workers, total * (w + 1) / workers, std::ref(parts[w]));
    for (auto& t : pool) t.join();
  }
  std::set<i64> all;
  for (const auto& s : parts) all.insert(s.begin(), s.end());
  return {qv, {all.begin(), all.end()}};
}

class TraceSetCache {
 public:
  std::shared_ptr<const TraceSet> get(PrimeModulus q, unsigned workers = 1) {
    {
      std::shared_lock lock(mu_);
      if (auto it = map_.find(q.value()); it != map_.end()) return it->second;
    }
    auto fresh = std::make_shared<const TraceSet>(compute_trace_set(q, workers));
    std::unique_lock lock(mu_);
    return map_.try_emplace(q.value(), std::move(fresh)).first->second;
  }

  std::size_t size() const {
    std::shared_lock lock(mu_);
    return map_.size();
  }

 private:
  mutable std::shared_mutex mu_;
  std::map<u64, std::shared_ptr<const TraceSet>> map_;
};

inline TraceSetCache& default_trace_cache() {
  static TraceSetCache cache;
  return cache;
}

inline const TraceSet& trace_set(PrimeModulus q) { return *default_trace_cache().get(q); }

}  // namespace frey
