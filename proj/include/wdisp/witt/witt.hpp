#pragma once

#include <boost/container/small_vector.hpp>

#include <map>
#include <memory>
#include <mutex>

#include "wdisp/witt/ghost.hpp"
#include "wdisp/witt/universal.hpp"

namespace wdisp {

/// Truncated p-typical Witt vector; the length is the number of components.
struct WittVector {
  boost::container::small_vector<Element, 5> c;

  std::size_t size() const { return c.size(); }
  friend bool operator==(const WittVector& a, const WittVector& b) { return a.c == b.c; }
};

/// How Witt sums and products are evaluated.
enum class WittStrategy {
  GhostLift,  ///< lift to a ghost-faithful cover and solve the ghost recursion
  Tables,     ///< evaluate the cached universal polynomials
};

/// W_N(R) over a dynamic ring R. Binary operations truncate to the shorter
/// operand; Frobenius consumes one component unless R has characteristic p.
class WittRing {
 public:
  using Vec = WittVector;
  using Scalar = Element;

  WittRing(Ring base, unsigned long p, WittStrategy strategy = WittStrategy::GhostLift)
      : base_(std::move(base)), p_(p), strategy_(strategy), cache_(std::make_shared<WorkCache>()) {
    if (!is_prime(p)) throw DomainError("Witt vectors need a prime p, got " + std::to_string(p));
    char_p_ = base_.has_characteristic(p);
  }

  unsigned long p() const { return p_; }
  const Ring& base() const { return base_; }
  WittStrategy strategy() const { return strategy_; }
  /// True when R is an F_p-algebra (Frobenius keeps the length).
  bool char_p() const { return char_p_; }
  std::size_t len(const Vec& x) const { return x.size(); }

  // ---- construction ----
  Vec zero(std::size_t n) const {
    Vec v;
    v.c.resize(n);
    return v;
  }
  Vec one(std::size_t n) const { return teich(base_.one(), n); }
  Vec teich(const Element& r, std::size_t n) const {
    Vec v = zero(n);
    if (n) v.c[0] = r;
    return v;
  }
  Vec make(std::vector<Element> comps) const {
    Vec v;
    for (auto& e : comps) v.c.push_back(std::move(e));
    return v;
  }
  Vec from_integer(const Integer& k, std::size_t n) const {
    if (k == 0) return zero(n);
    if (k == 1) return one(n);
    const Ring& L = work(n);
    std::vector<Element> g(n, L.from_integer(k));
    return finish(solve_ghost(L, p_, g));
  }
  Element component(const Vec& x, std::size_t i) const {
    if (i >= x.size()) throw PrecisionError("component index beyond Witt length");
    return x.c[i];
  }

  // ---- predicates ----
  bool is_zero(const Vec& x) const {
    for (const auto& e : x.c)
      if (!e.terms.empty()) return false;
    return true;
  }
  bool equal(const Vec& a, const Vec& b) const { return a == b; }
  bool is_teichmuller(const Vec& x) const {
    for (std::size_t i = 1; i < x.size(); ++i)
      if (!x.c[i].terms.empty()) return false;
    return true;
  }
  bool in_ideal(const Vec& x) const { return x.size() == 0 || x.c[0].terms.empty(); }
  bool is_unit(const Vec& x) const { return x.size() > 0 && base_.is_unit(x.c[0]); }

  Vec truncate(const Vec& x, std::size_t n) const {
    if (n > x.size()) throw PrecisionError("cannot extend a Witt vector");
    Vec v;
    v.c.assign(x.c.begin(), x.c.begin() + n);
    return v;
  }

  // ---- ghost map ----
  Element ghost(const Vec& x, std::size_t k) const {
    if (k >= x.size()) throw DomainError("ghost index " + std::to_string(k) + " out of range for length " + std::to_string(x.size()));
    std::vector<Element> comps(x.c.begin(), x.c.begin() + k + 1);
    return ghost_components(base_, p_, comps, k + 1).back();
  }

  // ---- ring operations ----
  Vec add(const Vec& x, const Vec& y) const {
    std::size_t n = std::min(x.size(), y.size());
    if (is_zero(x)) return truncate(y, n);
    if (is_zero(y)) return truncate(x, n);
    if (strategy_ == WittStrategy::Tables) return eval_tables(UniversalKind::Sum, x, y, n);
    const Ring& L = work(n);
    auto gx = ghost_components(L, p_, lift(x, L, n), n);
    auto gy = ghost_components(L, p_, lift(y, L, n), n);
    for (std::size_t k = 0; k < n; ++k) gx[k] = L.add(gx[k], gy[k]);
    return finish(solve_ghost(L, p_, gx));
  }
  Vec neg(const Vec& x) const {
    std::size_t n = x.size();
    if (is_zero(x)) return x;
    if (p_ != 2 && is_teichmuller(x)) return teich(base_.neg(x.c[0]), n);
    if (strategy_ == WittStrategy::Tables) return eval_tables(UniversalKind::Negation, x, x, n);
    const Ring& L = work(n);
    auto gx = ghost_components(L, p_, lift(x, L, n), n);
    for (auto& g : gx) g = L.neg(g);
    return finish(solve_ghost(L, p_, gx));
  }
  Vec sub(const Vec& x, const Vec& y) const { return add(x, neg(y)); }
  Vec mul(const Vec& x, const Vec& y) const {
    std::size_t n = std::min(x.size(), y.size());
    if (is_zero(x) || is_zero(y)) return zero(n);
    if (is_teichmuller(x)) return teich_mul(x.c[0], y, n);
    if (is_teichmuller(y)) return teich_mul(y.c[0], x, n);
    if (strategy_ == WittStrategy::Tables) return eval_tables(UniversalKind::Product, x, y, n);
    const Ring& L = work(n);
    auto gx = ghost_components(L, p_, lift(x, L, n), n);
    auto gy = ghost_components(L, p_, lift(y, L, n), n);
    for (std::size_t k = 0; k < n; ++k) gx[k] = L.mul(gx[k], gy[k]);
    return finish(solve_ghost(L, p_, gx));
  }
  /// Frobenius f. Length N -> N-1, or N -> N in characteristic p.
  Vec frob(const Vec& x) const {
    if (char_p_) {
      Vec v = x;
      for (auto& e : v.c) e = base_.pow(e, p_);
      return v;
    }
    return frob_general(x);
  }
  /// Frobenius through the general route even in characteristic p.
  Vec frob_general(const Vec& x) const {
    if (x.size() < 1) throw PrecisionError("Frobenius needs at least one Witt component");
    std::size_t n = x.size() - 1;
    if (n == 0) return zero(0);
    if (is_zero(x)) return zero(n);
    if (strategy_ == WittStrategy::Tables) return eval_tables(UniversalKind::Frobenius, x, x, n);
    const Ring& L = work(n + 1);
    auto gx = ghost_components(L, p_, lift(x, L, n + 1), n + 1);
    gx.erase(gx.begin());
    return finish(solve_ghost(L, p_, gx));
  }
  /// Verschiebung at fixed length (top component dropped).
  Vec versch(const Vec& x) const {
    Vec v = zero(x.size());
    for (std::size_t i = 1; i < x.size(); ++i) v.c[i] = x.c[i - 1];
    return v;
  }
  /// Verschiebung with the length increased by one.
  Vec versch_ext(const Vec& x) const {
    Vec v = zero(x.size() + 1);
    for (std::size_t i = 0; i < x.size(); ++i) v.c[i + 1] = x.c[i];
    return v;
  }
  /// Inverse of v on I_R: (0, x1, ..., x_{N-1}) -> (x1, ..., x_{N-1}).
  Vec shift_left(const Vec& x) const {
    if (!in_ideal(x)) throw DomainError("vector is not in the image of Verschiebung");
    Vec v;
    for (std::size_t i = 1; i < x.size(); ++i) v.c.push_back(x.c[i]);
    return v;
  }
  /// f^{-1} on W_N(F_q): componentwise x^{q/p}.
  Vec frob_inverse(const Vec& x) const {
    if (!base_.is_finite_field()) throw DomainError("inverse Frobenius is only available over finite fields");
    Integer e = exact_div(base_.field_order(), Integer(p_));
    Vec v = x;
    for (auto& c : v.c) c = base_.pow(c, e);
    return v;
  }

  /// Newton inversion y <- y(2 - xy) from [x0^{-1}].
  Vec invert(const Vec& x) const {
    std::size_t n = x.size();
    if (n == 0) return x;
    if (!base_.is_unit(x.c[0])) throw DomainError("Witt vector is not a unit: first component " + base_.to_string(x.c[0]) + " is not invertible");
    Element inv0 = base_.invert(x.c[0]);
    if (is_teichmuller(x)) return teich(inv0, n);
    unsigned k = base_.p_exponent(p_);
    if (k == 0) throw DomainError("witt_invert needs p nilpotent in " + base_.to_string());
    Vec y = teich(inv0, n);
    Vec one_n = one(n), two = from_integer(2, n);
    std::size_t guard = n * std::max<std::size_t>(k, 1) + n;
    for (std::size_t it = 0; it <= guard; ++it) {
      Vec xy = mul(x, y);
      if (xy == one_n) return y;
      y = mul(y, sub(two, xy));
    }
    throw DomainError("witt_invert exceeded its iteration guard (precondition violated)");
  }

 private:
  struct WorkCache {
    std::mutex mu;
    std::map<std::size_t, Ring> rings;
  };

  const Ring& work(std::size_t n) const {
    std::lock_guard<std::mutex> lock(cache_->mu);
    auto it = cache_->rings.find(n);
    if (it != cache_->rings.end()) return it->second;
    return cache_->rings.emplace(n, ghost_work_ring(base_, p_, n)).first->second;
  }

  std::vector<Element> lift(const Vec& x, const Ring& L, std::size_t n) const {
    std::vector<Element> out;
    out.reserve(n);
    bool same = L.same(base_);
    for (std::size_t i = 0; i < n; ++i) out.push_back(same ? x.c[i] : base_.transfer(x.c[i], L));
    return out;
  }

  Vec finish(const std::vector<Element>& comps) const {
    Vec v;
    if (comps.empty()) return v;
    // all work rings for one base share the layout; use the first to transfer
    const Ring& L = work(comps.size());
    bool same = L.same(base_);
    for (const auto& e : comps) v.c.push_back(same ? e : L.transfer(e, base_));
    return v;
  }

  Vec teich_mul(const Element& a, const Vec& y, std::size_t n) const {
    Vec v = zero(n);
    Element pw = a;
    for (std::size_t i = 0; i < n; ++i) {
      v.c[i] = base_.mul(pw, y.c[i]);
      if (i + 1 < n) pw = base_.pow(pw, p_);
    }
    return v;
  }

  Vec eval_tables(UniversalKind kind, const Vec& x, const Vec& y, std::size_t n) const {
    const Ring& U = universal_ring();
    std::size_t need = kind == UniversalKind::Frobenius ? n + 1 : n;
    if (need > kUniversalMaxIndex + 1) throw ResourceError("Witt length beyond the universal table range");
    Element zero_el = base_.zero();
    std::vector<const Element*> images(U.nvars(), &zero_el);
    for (std::size_t i = 0; i < need && i < x.size(); ++i) images[i] = &x.c[i];
    for (std::size_t i = 0; i < need && i < y.size(); ++i) images[kUniversalMaxIndex + 1 + i] = &y.c[i];
    Vec v;
    for (std::size_t k = 0; k < n; ++k) v.c.push_back(U.evaluate(universal_polynomial(kind, p_, k), images, base_));
    return v;
  }

  Ring base_;
  unsigned long p_;
  WittStrategy strategy_;
  bool char_p_ = false;
  std::shared_ptr<WorkCache> cache_;
};

}  // namespace wdisp
