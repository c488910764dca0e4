#pragma once

#include "frey/curves.hpp"
#include "frey/polyalg.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <sstream>
#include <unordered_map>

namespace frey {

struct NewformError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class FormKind { elliptic, generic };

struct NewformRecord {
  std::string label;
  std::string scheme = "stein";
  u64 level = 0;
  unsigned weight = 2;
  FormKind kind = FormKind::elliptic;
  GlobalCurveModel model;             // elliptic
  std::map<u64, i64> spot_checks;     // elliptic, optional published a_q
  IntPoly field_poly;                 // generic
  std::map<u64, RatPoly> coeffs;      // generic

  int degree() const { return kind == FormKind::elliptic ? 1 : field_poly.degree(); }
};

struct CoefficientValue {
  std::optional<BigInt> rational;
  IntPoly field_poly;
  RatPoly elem;

  bool is_rational() const { return rational.has_value(); }
  IntPoly charpoly() const { return rational ? linear(*rational) : charpoly_of_element(field_poly, elem); }
};

// (label, q) -> a_q for elliptic records, optionally mirrored to "<dir>/coefficients.txt".
class CoefficientCache {
 public:
  CoefficientCache() = default;
  explicit CoefficientCache(const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    file_ = dir / "coefficients.txt";
    std::ifstream in(*file_);
    std::string line;
    while (std::getline(in, line)) {
      const auto b = line.rfind(' ');
      if (b == std::string::npos || b == 0) continue;
      const auto a = line.rfind(' ', b - 1);
      if (a == std::string::npos) continue;
      try {
        map_[key(line.substr(0, a), std::stoull(line.substr(a + 1, b - a - 1)))] = std::stoll(line.substr(b + 1));
      } catch (const std::exception&) {
        // malformed line, recomputed on demand
      }
    }
  }

  std::optional<i64> find(const std::string& label, u64 q) const {
    std::shared_lock lock(mu_);
    auto it = map_.find(key(label, q));
    if (it == map_.end()) return std::nullopt;
    return it->second;
  }

  i64 insert(const std::string& label, u64 q, i64 v) {
    std::unique_lock lock(mu_);
    auto [it, fresh] = map_.try_emplace(key(label, q), v);
    if (fresh && file_) {
      std::ofstream out(*file_, std::ios::app);
      out << label << ' ' << q << ' ' << v << '\n';
    }
    return it->second;
  }

  std::size_t size() const {
    std::shared_lock lock(mu_);
    return map_.size();
  }

 private:
  static std::string key(const std::string& label, u64 q) { return label + '\x1f' + std::to_string(q); }

  std::optional<std::filesystem::path> file_;
  mutable std::shared_mutex mu_;
  std::unordered_map<std::string, i64> map_;
};

namespace detail {

using nlohmann::json;

inline BigInt json_int(const json& v, const std::string& what) {
  if (v.is_number_integer()) return v.is_number_unsigned() ? BigInt(v.get<u64>()) : BigInt(v.get<i64>());
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    const std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (s.size() > start && s.find_first_not_of("0123456789", start) == std::string::npos) return BigInt(s);
  }
  throw NewformError(what + ": expected an integer");
}

inline json int_json(const BigInt& v) {
  if (v >= std::numeric_limits<i64>::min() && v <= std::numeric_limits<i64>::max()) return v.convert_to<i64>();
  return v.str();
}

inline NewformRecord parse_record(const json& j) {
  NewformRecord r;
  if (!j.is_object()) throw NewformError("record is not an object");
  r.label = j.at("label").get<std::string>();
  try {
    r.scheme = j.value("scheme", std::string("stein"));
    if (r.scheme != "stein" && r.scheme != "cremona") throw NewformError("unknown scheme '" + r.scheme + "'");
    r.level = j.at("level").get<u64>();
    r.weight = j.value("weight", 2u);
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "elliptic") {
      r.kind = FormKind::elliptic;
      const auto& m = j.at("model");
      if (!m.is_array() || m.size() != 5) throw NewformError("model must list a1,a2,a3,a4,a6");
      for (std::size_t i = 0; i < 5; ++i) r.model.a[i] = json_int(m[i], "model");
      if (j.contains("spot_checks"))
        for (const auto& [q, v] : j.at("spot_checks").items()) r.spot_checks[std::stoull(q)] = v.get<i64>();
    } else if (kind == "generic") {
      r.kind = FormKind::generic;
      std::vector<BigInt> fp;
      for (const auto& x : j.at("field_poly")) fp.push_back(json_int(x, "field_poly"));
      r.field_poly = IntPoly(std::move(fp));
      for (const auto& [q, expr] : j.at("coeffs").items()) {
        std::vector<Rational> cs;
        for (const auto& pair : expr) {
          if (!pair.is_array() || pair.size() != 2) throw NewformError("coefficient " + q + ": expected [num, den] pairs");
          const BigInt den = json_int(pair[1], "coefficient " + q);
          if (den == 0) throw NewformError("coefficient " + q + ": zero denominator");
          cs.emplace_back(json_int(pair[0], "coefficient " + q), den);
        }
        r.coeffs[std::stoull(q)] = RatPoly(std::move(cs));
      }
    } else {
      throw NewformError("unknown kind '" + kind + "'");
    }
  } catch (const json::exception& e) {
    throw NewformError(e.what());
  }
  return r;
}

inline json record_json(const NewformRecord& r) {
  json j;
  j["label"] = r.label;
  j["scheme"] = r.scheme;
  j["level"] = r.level;
  j["weight"] = r.weight;
  if (r.kind == FormKind::elliptic) {
    j["kind"] = "elliptic";
    j["model"] = json::array();
    for (const auto& a : r.model.a) j["model"].push_back(int_json(a));
    if (!r.spot_checks.empty()) {
      j["spot_checks"] = json::object();
      for (const auto& [q, v] : r.spot_checks) j["spot_checks"][std::to_string(q)] = v;
    }
  } else {
    j["kind"] = "generic";
    j["field_poly"] = json::array();
    for (const auto& c : r.field_poly.c) j["field_poly"].push_back(int_json(c));
    j["coeffs"] = json::object();
    for (const auto& [q, e] : r.coeffs) {
      json arr = json::array();
      for (const auto& c : e.c)
        arr.push_back(json::array({int_json(boost::multiprecision::numerator(c)), int_json(boost::multiprecision::denominator(c))}));
      j["coeffs"][std::to_string(q)] = std::move(arr);
    }
  }
  return j;
}

inline std::vector<std::string> validate(const NewformRecord& r, u64 naive_threshold) {
  std::vector<std::string> errs;
  if (r.level == 0) errs.push_back("level must be positive");
  if (r.kind == FormKind::elliptic) {
    if (r.model.discriminant() == 0) {
      errs.push_back("singular model");
      return errs;
    }
    for (const auto& [q, v] : r.spot_checks) {
      if (r.level % q == 0 || q == 2 || !is_prime(q)) continue;
      const i64 t = trace(reduce_global(r.model, PrimeModulus(q)), naive_threshold);
      if (t != v) errs.push_back("a_" + std::to_string(q) + " is " + std::to_string(t) + ", spot check says " + std::to_string(v));
    }
  } else {
    if (r.field_poly.degree() < 2 || r.field_poly.lc() != 1) {
      errs.push_back("field polynomial must be monic of degree >= 2");
      return errs;
    }
    if (!certify_irreducible(r.field_poly)) errs.push_back("field polynomial not certified irreducible");
    for (const auto& [q, e] : r.coeffs) {
      try {
        charpoly_of_element(r.field_poly, e);
      } catch (const std::exception& ex) {
        errs.push_back("a_" + std::to_string(q) + ": " + ex.what());
      }
    }
  }
  return errs;
}

}  // namespace detail

class NewformStore {
 public:
  NewformStore() = default;

  static NewformStore parse(const std::string& text, std::shared_ptr<CoefficientCache> cache = nullptr,
                            u64 naive_threshold = kDefaultNaiveThreshold) {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw NewformError(std::string("fixture parse error: ") + e.what());
    }
    if (!doc.is_array()) throw NewformError("fixture must be a list of records");
    NewformStore s;
    s.threshold_ = naive_threshold;
    s.cache_ = cache ? std::move(cache) : std::make_shared<CoefficientCache>();
    std::vector<std::string> problems;
    for (std::size_t i = 0; i < doc.size(); ++i) {
      NewformRecord r;
      try {
        r = detail::parse_record(doc[i]);
      } catch (const std::exception& e) {
        const auto lbl = doc[i].is_object() && doc[i].contains("label") ? doc[i]["label"].dump() : "#" + std::to_string(i);
        problems.push_back("record " + lbl + ": " + e.what());
        continue;
      }
      for (const auto& e : detail::validate(r, naive_threshold)) problems.push_back("record \"" + r.label + "\": " + e);
      if (s.index_.count(r.label)) problems.push_back("record \"" + r.label + "\": duplicate label");
      s.index_[r.label] = s.records_.size();
      s.records_.push_back(std::move(r));
    }
    if (!problems.empty()) {
      std::string msg = "invalid newform fixture:";
      for (const auto& p : problems) msg += "\n  " + p;
      throw NewformError(msg);
    }
    return s;
  }

  static NewformStore load(const std::filesystem::path& path, const std::optional<std::filesystem::path>& cache_dir = std::nullopt,
                           u64 naive_threshold = kDefaultNaiveThreshold) {
    std::ifstream in(path);
    if (!in) throw NewformError("cannot open fixture " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    auto cache = cache_dir ? std::make_shared<CoefficientCache>(*cache_dir) : std::make_shared<CoefficientCache>();
    return parse(ss.str(), std::move(cache), naive_threshold);
  }

  std::string serialize() const {
    nlohmann::json doc = nlohmann::json::array();
    for (const auto& r : records_) doc.push_back(detail::record_json(r));
    return doc.dump(1);
  }

  const std::vector<NewformRecord>& records() const { return records_; }
  std::size_t size() const { return records_.size(); }
  bool contains(const std::string& label) const { return index_.count(label) > 0; }

  const NewformRecord& record(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end()) throw NewformError("unknown label \"" + label + "\"");
    return records_[it->second];
  }

  std::vector<const NewformRecord*> at_level(u64 level) const {
    std::vector<const NewformRecord*> out;
    for (const auto& r : records_)
      if (r.level == level) out.push_back(&r);
    return out;
  }

  // a_q' of an elliptic record by point counting on the reduced model.
  i64 elliptic_coefficient(const NewformRecord& r, u64 q) const {
    if (r.kind != FormKind::elliptic) throw NewformError("\"" + r.label + "\" is not elliptic");
    if (r.level % q == 0) throw NewformError("a_" + std::to_string(q) + " requested at a bad prime of \"" + r.label + "\"");
    if (auto hit = cache_->find(r.label, q)) return *hit;
    const i64 v = trace(reduce_global(r.model, PrimeModulus(q)), threshold_);
    return cache_->insert(r.label, q, v);
  }

  CoefficientValue coefficient(const std::string& label, u64 q) const {
    const auto& r = record(label);
    if (r.kind == FormKind::elliptic) return {BigInt(elliptic_coefficient(r, q)), {}, {}};
    auto it = r.coeffs.find(q);
    if (it == r.coeffs.end()) throw NewformError("\"" + label + "\" has no stored a_" + std::to_string(q));
    return {std::nullopt, r.field_poly, it->second};
  }

  CoefficientCache& cache() const { return *cache_; }
  u64 naive_threshold() const { return threshold_; }

 private:
  std::vector<NewformRecord> records_;
  std::map<std::string, std::size_t> index_;
  std::shared_ptr<CoefficientCache> cache_ = std::make_shared<CoefficientCache>();
  u64 threshold_ = kDefaultNaiveThreshold;
};

}  // namespace frey
