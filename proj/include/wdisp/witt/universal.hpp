#pragma once

#include <cstdlib>
#include <deque>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>

#include "wdisp/ring/json.hpp"
#include "wdisp/witt/ghost.hpp"

namespace wdisp {

/// Largest Witt index covered by the universal ring Z[x0..x7, y0..y7].
inline constexpr std::size_t kUniversalMaxIndex = 7;

enum class UniversalKind { Sum, Product, Negation, Frobenius };

inline const char* universal_kind_name(UniversalKind k) {
  switch (k) {
    case UniversalKind::Sum: return "S";
    case UniversalKind::Product: return "P";
    case UniversalKind::Negation: return "Neg";
    case UniversalKind::Frobenius: return "F";
  }
  return "?";
}

/// Z[x0..x7, y0..y7]; x_i is variable i, y_i is variable 8 + i.
inline const Ring& universal_ring() {
  static const Ring ring = [] {
    std::vector<std::string> names;
    for (std::size_t i = 0; i <= kUniversalMaxIndex; ++i) names.push_back("x" + std::to_string(i));
    for (std::size_t i = 0; i <= kUniversalMaxIndex; ++i) names.push_back("y" + std::to_string(i));
    return Ring::polynomial(Ring::integers(), names);
  }();
  return ring;
}

/// Append-only cache of the universal Witt polynomials S_n, P_n, Neg_n, F_n.
/// Each polynomial is computed at most once per process; with WDISP_CACHE_DIR
/// set, tables are also loaded from and saved to versioned JSON files there.
class UniversalCache {
 public:
  static constexpr int kFormatVersion = 1;

  static UniversalCache& instance() {
    static UniversalCache cache;
    return cache;
  }

  /// Term cap applied to every intermediate polynomial.
  void set_term_limit(std::size_t limit) {
    std::lock_guard<std::mutex> lock(mu_);
    term_limit_ = limit;
  }

  /// Returns the n-th polynomial of the given kind for prime p.
  const Element& get(UniversalKind kind, unsigned long p, std::size_t n) {
    std::size_t top = kind == UniversalKind::Frobenius ? n + 1 : n;
    if (top > kUniversalMaxIndex) throw ResourceError("universal polynomial index beyond " + std::to_string(kUniversalMaxIndex));
    std::lock_guard<std::mutex> lock(mu_);
    Tables& t = tables_for(p);
    auto& list = t.lists[std::size_t(kind)];
    if (list.size() <= n) {
      while (list.size() <= n) list.push_back(next(kind, p, list));
      save(p, t);
    }
    return list[n];
  }

  /// Number of cached polynomials of the kind (for tests).
  std::size_t cached(UniversalKind kind, unsigned long p) {
    std::lock_guard<std::mutex> lock(mu_);
    return tables_for(p).lists[std::size_t(kind)].size();
  }

  /// Drops the in-memory tables (the on-disk cache is untouched).
  void clear() {
    std::lock_guard<std::mutex> lock(mu_);
    tables_.clear();
  }

 private:
  struct Tables {
    std::deque<Element> lists[4];
  };

  static Element x(std::size_t i) { return universal_ring().variable(i); }
  static Element y(std::size_t i) { return universal_ring().variable(kUniversalMaxIndex + 1 + i); }

  static Element ghost(unsigned long p, std::size_t n, bool use_y) {
    const Ring& R = universal_ring();
    Element acc;
    for (std::size_t i = 0; i <= n; ++i)
      acc = R.add(acc, R.scale(R.pow(use_y ? y(i) : x(i), ipow(p, n - i)), ipow(p, i)));
    return acc;
  }

  Element guarded_pow(const Element& base, const Integer& e) const {
    const Ring& R = universal_ring();
    Element r = R.one(), b = base;
    Integer k = e;
    while (k > 0) {
      if (mpz_odd_p(k.get_mpz_t())) r = R.mul(r, b);
      k >>= 1;
      if (k > 0) b = R.mul(b, b);
      if (r.terms.size() > term_limit_ || b.terms.size() > term_limit_)
        throw ResourceError("universal Witt polynomial exceeds " + std::to_string(term_limit_) + " terms");
    }
    return r;
  }

  Element next(UniversalKind kind, unsigned long p, const std::deque<Element>& prev) {
    const Ring& R = universal_ring();
    std::size_t n = prev.size();
    Element target;
    switch (kind) {
      case UniversalKind::Sum: target = R.add(ghost(p, n, false), ghost(p, n, true)); break;
      case UniversalKind::Product: target = R.mul(ghost(p, n, false), ghost(p, n, true)); break;
      case UniversalKind::Negation: target = R.neg(ghost(p, n, false)); break;
      case UniversalKind::Frobenius: target = ghost(p, n + 1, false); break;
    }
    for (std::size_t i = 0; i < n; ++i)
      target = R.sub(target, R.scale(guarded_pow(prev[i], ipow(p, n - i)), ipow(p, i)));
    return R.divide(target, ipow(p, n));
  }

  Tables& tables_for(unsigned long p) {
    auto it = tables_.find(p);
    if (it != tables_.end()) return it->second;
    Tables& t = tables_[p];
    load(p, t);
    return t;
  }

  static std::filesystem::path cache_file(unsigned long p) {
    const char* dir = std::getenv("WDISP_CACHE_DIR");
    if (!dir || !*dir) return {};
    return std::filesystem::path(dir) / ("witt-universal-p" + std::to_string(p) + "-v" + std::to_string(kFormatVersion) + ".json");
  }

  static void load(unsigned long p, Tables& t) {
    auto path = cache_file(p);
    if (path.empty() || !std::filesystem::exists(path)) return;
    try {
      std::ifstream in(path);
      Json j = Json::parse(in);
      if (j.at("version").get<int>() != kFormatVersion || j.at("p").get<unsigned long>() != p ||
          j.at("ring").get<std::string>() != universal_ring().to_string())
        return;
      for (int k = 0; k < 4; ++k) {
        const char* key = universal_kind_name(UniversalKind(k));
        if (!j.contains(key)) continue;
        for (const auto& e : j[key]) t.lists[k].push_back(element_from_json(universal_ring(), e));
      }
    } catch (const std::exception&) {
      for (auto& l : t.lists) l.clear();
    }
  }

  static void save(unsigned long p, const Tables& t) {
    auto path = cache_file(p);
    if (path.empty()) return;
    Json j;
    j["version"] = kFormatVersion;
    j["p"] = p;
    j["ring"] = universal_ring().to_string();
    for (int k = 0; k < 4; ++k) {
      Json arr = Json::array();
      for (const auto& e : t.lists[k]) arr.push_back(element_to_json(universal_ring(), e));
      j[universal_kind_name(UniversalKind(k))] = arr;
    }
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    auto tmp = path;
    tmp += ".tmp";
    {
      std::ofstream out(tmp);
      if (!out) return;
      out << j.dump();
    }
    std::filesystem::rename(tmp, path, ec);
  }

  std::mutex mu_;
  std::map<unsigned long, Tables> tables_;
  std::size_t term_limit_ = 200000;
};

/// S_n, P_n, Neg_n or F_n for prime p (cached).
inline const Element& universal_polynomial(UniversalKind kind, unsigned long p, std::size_t n) {
  return UniversalCache::instance().get(kind, p, n);
}

}  // namespace wdisp
