#pragma once

#include "frey/frey.hpp"
#include "frey/newforms.hpp"

#include <atomic>

namespace frey {

enum class Branch { K, A };  // family 1 against 1200K1, family 2 against 1200A1
enum class Sign { plus, minus };

inline int family_of(Branch b) { return b == Branch::K ? 1 : 2; }
inline const char* branch_name(Branch b) { return b == Branch::K ? "K" : "A"; }

struct ZetaEntry {
  FieldElement zeta;
  u64 delta;
  bool in_plus;
  bool in_minus;
};

struct CriterionConfig {
  std::string label_k = "1200K1";
  std::string label_a = "1200A1";

  const std::string& label(Branch b) const { return b == Branch::K ? label_k : label_a; }
};

struct CriterionWitness {
  u64 p = 0;
  std::string form_label;
  Branch branch = Branch::K;
  u64 n = 0;
  u64 q = 0;
  std::size_t checked_zetas = 0;
};

inline u64 family_constant(int family) {
  if (family == 1) return 62500;
  if (family == 2) return 20;
  throw std::invalid_argument("family must be 1 or 2");
}

// zeta in mu_n(F_q) with 405 + c*zeta a square; delta is the smaller root.
inline std::vector<ZetaEntry> zeta_family(int family, u64 n, PrimeModulus q) {
  const u64 c = family_constant(family);
  if (q.value() == 5) throw std::invalid_argument("zeta_family: q must avoid 2 and 5");
  const FieldElement k405(405, q), kc(c, q), m225 = -FieldElement(225, q), ten(10, q);
  std::vector<ZetaEntry> out;
  for (const auto& z : roots_of_unity(n, q)) {
    const auto delta = sqrt_mod(k405 + kc * z);
    if (!delta) continue;
    const FieldElement d(*delta, q);
    out.push_back({z, *delta, legendre(m225 + ten * d) >= 0, legendre(m225 - ten * d) >= 0});
  }
  return out;
}

inline WeierstrassCurve f_curve(int family, const ZetaEntry& e, Sign sign, PrimeModulus q) {
  if (sign == Sign::plus && !e.in_plus) throw std::invalid_argument("f_curve: zeta not in the plus set");
  if (sign == Sign::minus && !e.in_minus) throw std::invalid_argument("f_curve: zeta not in the minus set");
  if (q.value() == 5) throw std::invalid_argument("f_curve: q must avoid 2 and 5");
  const FieldElement d(e.delta, q);
  FieldElement a2 = family == 1 ? d * FieldElement(25, q).inverse() : d;
  if (sign == Sign::plus) a2 = -a2;
  const FieldElement a4 = FieldElement(family == 1 ? 25 : 5, q) * e.zeta;
  return {a2, a4, FieldElement(0, q)};
}

struct CheckOutcome {
  bool passed = false;
  char failed = 0;  // 'b', 'c' or 'd'
  std::size_t checked_zetas = 0;
};

inline CheckOutcome evaluate_form(u64 p, u64 n, Branch branch, const NewformStore& store,
                                  const CriterionConfig& cfg = {}) {
  const u64 qv = n * p + 1;
  if (!is_prime(qv)) throw std::invalid_argument("check_form: q = np+1 is not prime");
  const PrimeModulus q(qv);
  const i64 aq = store.elliptic_coefficient(store.record(cfg.label(branch)), qv);
  const i64 pp = static_cast<i64>(p);
  auto congruent = [&](i64 x, i64 y) { return (x - y) % pp == 0; };
  CheckOutcome out;
  if (((aq * aq - 4) % pp) == 0) {
    out.failed = 'b';
    return out;
  }
  const int family = family_of(branch);
  for (const auto& e : zeta_family(family, n, q)) {
    ++out.checked_zetas;
    if (e.in_plus && congruent(aq, trace(f_curve(family, e, Sign::plus, q), store.naive_threshold()))) {
      out.failed = 'c';
      return out;
    }
    if (e.in_minus && congruent(aq, trace(f_curve(family, e, Sign::minus, q), store.naive_threshold()))) {
      out.failed = 'd';
      return out;
    }
  }
  out.passed = true;
  return out;
}

inline bool check_form(u64 p, u64 n, Branch branch, const NewformStore& store, const CriterionConfig& cfg = {}) {
  return evaluate_form(p, n, branch, store, cfg).passed;
}

// Odd n makes np+1 even, so only even n are scanned.
inline std::optional<CriterionWitness> find_witness(u64 p, Branch branch, u64 n_max, const NewformStore& store,
                                                    const CriterionConfig& cfg = {}) {
  if (p < 17 || !is_prime(p)) throw std::invalid_argument("find_witness: p must be a prime >= 17");
  for (u64 n = 2; n <= n_max; n += 2) {
    if (!is_prime(n * p + 1)) continue;
    const auto r = evaluate_form(p, n, branch, store, cfg);
    if (r.passed) return CriterionWitness{p, cfg.label(branch), branch, n, n * p + 1, r.checked_zetas};
  }
  return std::nullopt;
}

// Smallest n passing both branches at once.
inline std::optional<std::pair<CriterionWitness, CriterionWitness>> find_shared_witness(u64 p, u64 n_max,
                                                                                         const NewformStore& store,
                                                                                         const CriterionConfig& cfg = {}) {
  if (p < 17 || !is_prime(p)) throw std::invalid_argument("find_witness: p must be a prime >= 17");
  for (u64 n = 2; n <= n_max; n += 2) {
    if (!is_prime(n * p + 1)) continue;
    const auto k = evaluate_form(p, n, Branch::K, store, cfg);
    if (!k.passed) continue;
    const auto a = evaluate_form(p, n, Branch::A, store, cfg);
    if (!a.passed) continue;
    return std::pair{CriterionWitness{p, cfg.label_k, Branch::K, n, n * p + 1, k.checked_zetas},
                     CriterionWitness{p, cfg.label_a, Branch::A, n, n * p + 1, a.checked_zetas}};
  }
  return std::nullopt;
}

struct RangeEntry {
  u64 p = 0;
  std::optional<CriterionWitness> k, a;
  bool k_requested = true, a_requested = true;

  bool ok() const { return (!k_requested || k) && (!a_requested || a); }
};

struct RangeOptions {
  u64 n_max = 200;
  bool branch_k = true, branch_a = true;
  bool shared_n = false;
  unsigned workers = 1;
  CriterionConfig config;
};

inline std::vector<RangeEntry> verify_range(u64 p_min, u64 p_max, const NewformStore& store, const RangeOptions& opt = {}) {
  if (p_min < 17) throw std::invalid_argument("verify_range: p_min must be >= 17");
  std::vector<u64> primes;
  for (u64 p = p_min; p <= p_max; ++p)
    if (is_prime(p)) primes.push_back(p);
  std::vector<RangeEntry> out(primes.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex fail_mu;
  auto work = [&] {
    for (std::size_t i; (i = next++) < primes.size();) {
      try {
        RangeEntry e;
        e.p = primes[i];
        e.k_requested = opt.branch_k;
        e.a_requested = opt.branch_a;
        if (opt.shared_n) {
          if (auto w = find_shared_witness(e.p, opt.n_max, store, opt.config)) {
            if (opt.branch_k) e.k = w->first;
            if (opt.branch_a) e.a = w->second;
          }
        } else {
          if (opt.branch_k) e.k = find_witness(e.p, Branch::K, opt.n_max, store, opt.config);
          if (opt.branch_a) e.a = find_witness(e.p, Branch::A, opt.n_max, store, opt.config);
        }
        out[i] = std::move(e);
      } catch (...) {
        std::lock_guard lock(fail_mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const unsigned workers = std::max(1u, std::min<unsigned>(opt.workers, static_cast<unsigned>(primes.size())));
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
