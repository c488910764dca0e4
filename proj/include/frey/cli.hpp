#pragma once

#include "frey/criterion.hpp"
#include "frey/obstruction.hpp"
#include "frey/sieve.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

namespace frey::cli {

enum Exit : int { kOk = 0, kError = 1, kInconclusive = 2 };

struct RunConfig {
  std::filesystem::path fixture_path = "data/newforms.json";
  std::optional<std::filesystem::path> cache_dir;
  u64 naive_bsgs_threshold = kDefaultNaiveThreshold;
  u64 n_max = 200;
  unsigned worker_count = std::max(1u, std::thread::hardware_concurrency());
  bool json = false;

  void validate() const {
    if (naive_bsgs_threshold == 0 || n_max == 0 || worker_count == 0)
      throw std::invalid_argument("numeric options must be positive");
  }
};

namespace detail {

using nlohmann::json;

inline json big(const BigInt& v) {
  if (v >= std::numeric_limits<i64>::min() && v <= std::numeric_limits<i64>::max()) return v.convert_to<i64>();
  return v.str();
}

inline json bigs(const std::vector<BigInt>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(big(x));
  return a;
}

template <class T>
std::string join(const std::vector<T>& v, const char* sep = ", ") {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? sep : "") << v[i];
  return os.str();
}

inline std::vector<u64> split_u64(const std::string& s) {
  std::vector<u64> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    std::size_t used = 0;
    const u64 v = std::stoull(tok, &used);
    if (used != tok.size()) throw std::invalid_argument("bad integer '" + tok + "'");
    out.push_back(v);
  }
  return out;
}

inline std::pair<u64, u64> parse_range(const std::string& s) {
  const auto dots = s.find("..");
  if (dots == std::string::npos) throw std::invalid_argument("range must look like A..B");
  const u64 a = std::stoull(s.substr(0, dots)), b = std::stoull(s.substr(dots + 2));
  if (a > b) throw std::invalid_argument("empty range " + s);
  return {a, b};
}

inline json verdict_json(const SieveVerdict& v) {
  json per = json::array();
  for (const auto& d : v.per_q)
    per.push_back({{"q", d.q},
                   {"rq", d.rq.str()},
                   {"unbounded", d.survivors.unbounded},
                   {"survivors", bigs(d.survivors.primes)},
                   {"unresolved", bigs(d.survivors.unresolved)}});
  return {{"label", v.label},     {"level", v.level},           {"aux_primes", v.aux_primes},
          {"skipped", v.skipped}, {"unbounded", v.unbounded},   {"survivors", bigs(v.survivors)},
          {"unresolved", bigs(v.unresolved)}, {"eliminated", v.eliminated()}, {"per_q", per}};
}

inline std::string verdict_text(const SieveVerdict& v) {
  std::ostringstream os;
  os << v.label << ": ";
  if (v.unbounded)
    os << "unbounded";
  else if (v.eliminated())
    os << "eliminated";
  else {
    os << "survivors {" << join(v.survivors) << "}";
    if (!v.unresolved.empty()) os << " unresolved {" << join(v.unresolved) << "}";
  }
  for (const auto& d : v.per_q) {
    os << "\n  q=" << d.q << " R=" << d.rq;
    if (d.survivors.unbounded)
      os << " (zero)";
    else
      os << " -> {" << join(d.survivors.primes) << "}";
  }
  if (!v.skipped.empty()) os << "\n  skipped " << join(v.skipped);
  return os.str();
}

inline json witness_json(u64 p, Branch b, const std::optional<CriterionWitness>& w, u64 n_max) {
  json j = {{"p", p}, {"branch", branch_name(b)}, {"found", w.has_value()}};
  if (w) {
    j["form"] = w->form_label;
    j["n"] = w->n;
    j["q"] = w->q;
    j["checked_zetas"] = w->checked_zetas;
  } else {
    j["n_max"] = n_max;
  }
  return j;
}

inline std::string witness_text(u64 p, Branch b, const std::optional<CriterionWitness>& w, u64 n_max) {
  std::ostringstream os;
  os << "p=" << p << " branch " << branch_name(b) << ": ";
  if (w)
    os << w->form_label << " n=" << w->n << " q=" << w->q << " zetas=" << w->checked_zetas;
  else
    os << "no witness with n <= " << n_max;
  return os.str();
}

struct Emitter {
  std::ostream& out;
  bool json_mode;

  void emit(const json& j, const std::string& text) const {
    if (json_mode)
      out << j.dump() << '\n';
    else
      out << text << '\n';
  }
};

inline NewformStore open_store(const RunConfig& cfg) {
  if (!std::filesystem::exists(cfg.fixture_path))
    throw std::invalid_argument("fixture file not found: " + cfg.fixture_path.string());
  auto cache = cfg.cache_dir;
  if (const char* env = std::getenv("FREY_SIEVE_CACHE"); env && *env) cache = std::filesystem::path(env);
  return NewformStore::load(cfg.fixture_path, cache, cfg.naive_bsgs_threshold);
}

struct Check {
  std::string name;
  bool ok;
};

inline std::vector<Check> selfcheck(const RunConfig& cfg) {
  std::vector<Check> out;
  const std::map<u64, std::vector<i64>> expected{{3, {-2, 2}}, {7, {-4, -2, 2}}, {11, {-4, 0, 4}}, {13, {-4, -2, 0, 2, 4}}};
  bool ts_ok = true;
  for (const auto& [q, vals] : expected) ts_ok = ts_ok && trace_set(PrimeModulus(q)).values == vals;
  out.push_back({"trace sets q<=13", ts_ok});

  std::mt19937_64 rng(20240607);
  bool hasse = true, agree = true, twist = true;
  for (u64 q : {101ULL, 1009ULL, 2003ULL}) {
    const PrimeModulus m(q);
    u64 nonres = 2;
    while (legendre(FieldElement(nonres, m)) != -1) ++nonres;
    for (int i = 0; i < 40; ++i) {
      const auto c = WeierstrassCurve::from_signed(static_cast<i64>(rng() % q), static_cast<i64>(rng() % q),
                                                   static_cast<i64>(rng() % q), m);
      if (is_singular(c)) continue;
      const i64 t = trace(c, cfg.naive_bsgs_threshold);
      hasse = hasse && std::abs(t) <= hasse_bound(q);
      agree = agree && count_points(c, CountMethod::naive) == count_points(c, CountMethod::bsgs);
      const FieldElement u(nonres, m);
      const WeierstrassCurve tw(c.a2 * u, c.a4 * u * u, c.a6 * u * u * u);
      twist = twist && trace(tw) == -t;
    }
  }
  out.push_back({"Hasse bound", hasse});
  out.push_back({"naive = BSGS", agree});
  out.push_back({"twist law", twist});

  const IntPoly f63({25, -30, -18, 6, 1});
  const RatPoly a3({Rational(-2), Rational(-13, 10), Rational(3, 5), Rational(1, 10)});
  const auto cp = charpoly_of_element(f63, a3);
  const auto p3 = pq_poly(PrimeModulus(3), trace_set(PrimeModulus(3)));
  out.push_back({"resultant 5200 #63", cp == IntPoly({16, -8, -7, 2, 1}) && resultant(cp, p3) == 262144 &&
                                           sylvester_resultant(cp, p3) == 262144});

  bool primes_ok = true;
  for (u64 n = 2; n < 20000; ++n) {
    const auto fac = factor_u64(n);
    primes_ok = primes_ok && (is_prime(n) == (fac.size() == 1 && fac.begin()->second == 1));
  }
  out.push_back({"is_prime vs factor", primes_ok});

  bool thue = true;
  try {
    thue_constant_checked();
  } catch (...) {
    thue = false;
  }
  out.push_back({"Thue constant", thue});
  return out;
}

}  // namespace detail

inline int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  std::string format = "text";

  CLI::App app{"Frey curve sieve and Kraus criterion toolkit", "frey"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--workers", cfg.worker_count, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--naive-threshold", cfg.naive_bsgs_threshold, "largest q counted naively")->check(CLI::PositiveNumber);
  app.add_option("--cache-dir", cfg.cache_dir, "on-disk coefficient cache");

  auto* ts = app.add_subcommand("trace-set", "possible a_q(E(a,b)) over F_q");
  std::vector<u64> ts_q;
  ts->add_option("--q", ts_q, "prime (repeatable)")->required();

  auto* sv = app.add_subcommand("sieve", "resultant sieve over auxiliary primes");
  std::string labels, aux_s;
  std::vector<u64> levels;
  u64 p_min = 13;
  sv->add_option("--fixtures", cfg.fixture_path, "newform fixture file");
  auto* lab = sv->add_option("--labels", labels, "comma separated labels");
  sv->add_option("--labels-level", levels, "every form at these levels")->delimiter(',')->excludes(lab);
  sv->add_option("--aux", aux_s, "comma separated auxiliary primes")->required();
  sv->add_option("--p-min", p_min, "smallest exponent considered")->check(CLI::PositiveNumber);

  auto* cr = app.add_subcommand("criterion", "search q = np+1 witnesses");
  std::optional<u64> cr_p;
  std::string cr_range, cr_branch = "both";
  bool shared = false;
  cr->add_option("--fixtures", cfg.fixture_path, "newform fixture file");
  auto* pflag = cr->add_option("--p", cr_p, "single prime");
  cr->add_option("--p-range", cr_range, "A..B")->excludes(pflag);
  cr->add_option("--n-max", cfg.n_max, "largest n")->check(CLI::PositiveNumber);
  cr->add_option("--branch", cr_branch, "both, K or A")->check(CLI::IsMember({"both", "K", "A"}));
  cr->add_flag("--shared-n", shared, "require one n for both branches");

  auto* ob = app.add_subcommand("obstruction", "search for a modular obstruction pair");
  std::string ob_d;
  i64 height = 10;
  ob->add_option("--d", ob_d, "positive integer")->required();
  ob->add_option("--height", height, "max(|a|,|b|)")->check(CLI::PositiveNumber);

  auto* lm = app.add_subcommand("lemma", "classify d <= d-max");
  u64 d_max = 500;
  lm->add_option("--d-max", d_max, "upper bound")->check(CLI::PositiveNumber);

  auto* sc = app.add_subcommand("selfcheck", "run the invariant suites");

  std::vector<std::string> rev(argv.rbegin(), argv.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kError;
  }

  try {
    cfg.json = format == "json";
    cfg.validate();
    const detail::Emitter em{out, cfg.json};

    if (ts->parsed()) {
      for (u64 q : ts_q) {
        const PrimeModulus m(q);
        if (q == 5) throw std::invalid_argument("q = 5 is excluded");
        const auto set = default_trace_cache().get(m, cfg.worker_count);
        em.emit({{"q", q}, {"values", set->values}}, "q=" + std::to_string(q) + ": [" + detail::join(set->values) + "]");
      }
      return kOk;
    }

    if (sv->parsed()) {
      const auto store = detail::open_store(cfg);
      std::vector<const NewformRecord*> forms;
      if (!labels.empty()) {
        std::stringstream ss(labels);
        std::string l;
        while (std::getline(ss, l, ','))
          if (!l.empty()) forms.push_back(&store.record(l));
      }
      for (u64 lv : levels) {
        auto at = store.at_level(lv);
        if (at.empty()) throw std::invalid_argument("no forms at level " + std::to_string(lv));
        forms.insert(forms.end(), at.begin(), at.end());
      }
      if (forms.empty()) throw std::invalid_argument("sieve needs --labels or --labels-level");
      const auto verdicts = run_sieve(store, forms, detail::split_u64(aux_s), BigInt(p_min), cfg.worker_count);
      bool all = true;
      for (const auto& v : verdicts) {
        all = all && v.eliminated();
        em.emit(detail::verdict_json(v), detail::verdict_text(v));
      }
      return all ? kOk : kInconclusive;
    }

    if (cr->parsed()) {
      if (!cr_p && cr_range.empty()) throw std::invalid_argument("criterion needs --p or --p-range");
      const auto [lo, hi] = cr_p ? std::pair{*cr_p, *cr_p} : detail::parse_range(cr_range);
      if (cr_p && !is_prime(*cr_p)) throw std::invalid_argument("--p must be prime");
      const auto store = detail::open_store(cfg);
      RangeOptions opt;
      opt.n_max = cfg.n_max;
      opt.branch_k = cr_branch != "A";
      opt.branch_a = cr_branch != "K";
      opt.shared_n = shared;
      opt.workers = cfg.worker_count;
      bool all = true;
      for (const auto& e : verify_range(lo, hi, store, opt)) {
        all = all && e.ok();
        if (e.k_requested)
          em.emit(detail::witness_json(e.p, Branch::K, e.k, opt.n_max), detail::witness_text(e.p, Branch::K, e.k, opt.n_max));
        if (e.a_requested)
          em.emit(detail::witness_json(e.p, Branch::A, e.a, opt.n_max), detail::witness_text(e.p, Branch::A, e.a, opt.n_max));
      }
      return all ? kOk : kInconclusive;
    }

    if (ob->parsed()) {
      const BigInt d(ob_d);
      const auto w = search_obstruction(d, height);
      nlohmann::json j = {{"d", d.str()}, {"height", height}, {"found", w.has_value()}};
      std::string text = "d=" + d.str() + ": ";
      if (w) {
        j["a"] = w->a;
        j["b"] = w->b;
        j["m"] = w->m.str();
        text += "(" + std::to_string(w->a) + ", " + std::to_string(w->b) + ") m=" + w->m.str();
      } else {
        text += "absent up to height " + std::to_string(height);
      }
      em.emit(j, text);
      return w ? kOk : kInconclusive;
    }

    if (lm->parsed()) {
      for (u64 d = 1; d <= d_max; ++d) {
        bool hyp = true;
        for (const auto& [l, e] : factor_u64(d)) hyp = hyp && l % 5 != 1;
        if (!hyp) continue;
        const auto v = lemma_classify(BigInt(d));
        nlohmann::json j = {{"d", d}, {"obstructed", v.obstructed}};
        std::string text = "d=" + std::to_string(d) + ": " + (v.obstructed ? "obstructed" : "clear");
        if (v.witness) {
          j["a"] = v.witness->a;
          j["b"] = v.witness->b;
          text += " (" + std::to_string(v.witness->a) + ", " + std::to_string(v.witness->b) + ")";
        }
        em.emit(j, text);
      }
      return kOk;
    }

    if (sc->parsed()) {
      bool all = true;
      for (const auto& c : detail::selfcheck(cfg)) {
        all = all && c.ok;
        em.emit({{"check", c.name}, {"ok", c.ok}}, std::string(c.ok ? "ok   " : "FAIL ") + c.name);
      }
      return all ? kOk : kError;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kError;
  }
  return kError;
}

inline int run(int argc, char** argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  return run(std::vector<std::string>(argv + 1, argv + argc), out, err);
}

}  // namespace frey::cli
