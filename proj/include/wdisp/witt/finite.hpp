#pragma once

#include <cstdint>
#include <map>

#include "wdisp/witt/witt.hpp"

namespace wdisp {

/// Enumerates the elements of a finite ring of prime characteristic p given as
/// F_q or F_q[e1..]/(e1..)^M. Index digits are base-p coefficients of the
/// monomial basis.
class FiniteRingCodec {
 public:
  explicit FiniteRingCodec(const Ring& R) : ring_(R) {
    const RingShape& s = R.shape();
    if (s.kind != CoeffKind::Modular || !s.modulus.fits_ulong_p() || !is_prime(s.modulus.get_ui()) || s.ideal_prime != 0)
      throw DomainError("finite enumeration needs a ring of prime characteristic, got " + R.to_string());
    for (std::size_t i = 0; i < s.vars.size(); ++i)
      if (!s.truncated[i]) throw DomainError("finite enumeration needs every variable to be nilpotent");
    p_ = s.modulus.get_ui();
    unsigned m = std::max(1u, R.gen_degree());
    // monomials of ideal degree < M in the truncated variables
    std::vector<Monomial> var_monos{Monomial(R.width(), 0)};
    for (std::size_t v = 0; v < R.nvars(); ++v) {
      std::vector<Monomial> next;
      for (const auto& mono : var_monos)
        for (unsigned e = 0; e < s.exponent; ++e) {
          Monomial t = mono;
          t[R.offset() + v] = Exponent(e);
          if (R.ideal_degree(t) < long(s.exponent)) next.push_back(t);
        }
      var_monos = std::move(next);
    }
    for (const auto& mono : var_monos)
      for (unsigned i = 0; i < m; ++i) {
        Monomial t = mono;
        if (R.has_gen()) t[0] = Exponent(i);
        pos_.emplace(t, basis_.size());
        basis_.push_back(t);
      }
    size_ = 1;
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      if (size_ > (std::uint64_t(1) << 40) / p_) throw ResourceError("finite ring too large to enumerate");
      size_ *= p_;
    }
  }

  const Ring& ring() const { return ring_; }
  std::uint64_t size() const { return size_; }

  std::uint64_t encode(const Element& x) const {
    std::uint64_t idx = 0;
    for (const auto& t : x.terms) {
      auto it = pos_.find(t.m);
      if (it == pos_.end()) throw std::logic_error("element outside the enumerated basis");
      std::uint64_t w = 1;
      for (std::size_t k = 0; k < it->second; ++k) w *= p_;
      idx += t.c.get_ui() * w;
    }
    return idx;
  }
  Element decode(std::uint64_t idx) const {
    std::vector<Term> terms;
    for (std::size_t k = 0; k < basis_.size(); ++k) {
      unsigned long digit = idx % p_;
      idx /= p_;
      if (digit) terms.push_back(Term{basis_[k], Integer(digit)});
    }
    return ring_.make(std::move(terms));
  }

 private:
  Ring ring_;
  unsigned long p_ = 0;
  std::vector<Monomial> basis_;
  std::map<Monomial, std::size_t> pos_;
  std::uint64_t size_ = 0;
};

/// W_N(k) for a small finite ring k of characteristic p, fully tabulated.
/// Elements are indices; every operation is a table lookup. Tables are
/// computed once with the exact ghost-lift arithmetic of WittRing.
class FiniteWittRing {
 public:
  using Vec = std::uint32_t;
  using Scalar = Element;

  FiniteWittRing(const Ring& k, unsigned long p, std::size_t N, std::uint64_t budget = 1024)
      : codec_(k), witt_(k, p), N_(N) {
    if (!k.has_characteristic(p)) throw DomainError("tabulated Witt rings need characteristic p");
    if (N == 0) throw DomainError("Witt length must be positive");
    q_ = codec_.size();
    size_ = 1;
    for (std::size_t i = 0; i < N; ++i) {
      size_ *= q_;
      if (size_ > budget) throw ResourceError("W_" + std::to_string(N) + "(" + k.to_string() + ") has more than " + std::to_string(budget) + " elements");
    }
    vecs_.reserve(size_);
    for (std::uint64_t i = 0; i < size_; ++i) vecs_.push_back(decode_vec(i));
    add_.resize(size_ * size_);
    mul_.resize(size_ * size_);
    for (std::uint64_t i = 0; i < size_; ++i)
      for (std::uint64_t j = i; j < size_; ++j) {
        Vec s = encode_vec(witt_.add(vecs_[i], vecs_[j]));
        Vec m = encode_vec(witt_.mul(vecs_[i], vecs_[j]));
        add_[i * size_ + j] = add_[j * size_ + i] = s;
        mul_[i * size_ + j] = mul_[j * size_ + i] = m;
      }
    neg_.resize(size_);
    frob_.resize(size_);
    versch_.resize(size_);
    inv_.assign(size_, kNone);
    Vec one_idx = encode_vec(witt_.one(N));
    for (std::uint64_t i = 0; i < size_; ++i) {
      for (std::uint64_t j = 0; j < size_; ++j)
        if (add_[i * size_ + j] == 0) {
          neg_[i] = Vec(j);
          break;
        }
      frob_[i] = encode_vec(witt_.frob(vecs_[i]));
      versch_[i] = encode_vec(witt_.versch(vecs_[i]));
      for (std::uint64_t j = 0; j < size_; ++j)
        if (mul_[i * size_ + j] == one_idx) {
          inv_[i] = Vec(j);
          break;
        }
    }
  }

  unsigned long p() const { return witt_.p(); }
  const Ring& base() const { return codec_.ring(); }
  bool char_p() const { return true; }
  std::size_t length() const { return N_; }
  std::uint64_t size() const { return size_; }
  std::size_t len(const Vec&) const { return N_; }
  const WittRing& dynamic() const { return witt_; }

  Vec zero(std::size_t = 0) const { return 0; }
  Vec one(std::size_t = 0) const { return Vec(codec_.encode(base().one())); }
  Vec teich(const Element& r, std::size_t = 0) const { return Vec(codec_.encode(r)); }
  Vec from_integer(const Integer& k, std::size_t = 0) const { return encode_vec(witt_.from_integer(k, N_)); }
  Vec make(const std::vector<Element>& comps) const {
    WittVector v = witt_.make(comps);
    if (v.size() != N_) throw DomainError("component count does not match the tabulated length");
    return encode_vec(v);
  }
  Vec truncate(const Vec& x, std::size_t n) const {
    if (n != N_) throw PrecisionError("tabulated Witt vectors have fixed length");
    return x;
  }

  Vec add(Vec x, Vec y) const { return add_[x * size_ + y]; }
  Vec sub(Vec x, Vec y) const { return add_[x * size_ + neg_[y]]; }
  Vec neg(Vec x) const { return neg_[x]; }
  Vec mul(Vec x, Vec y) const { return mul_[x * size_ + y]; }
  Vec frob(Vec x) const { return frob_[x]; }
  Vec versch(Vec x) const { return versch_[x]; }
  /// Undoing v loses the top component, which fixed-length tables cannot
  /// represent; callers pass the preimage explicitly instead.
  Vec shift_left(Vec) const {
    throw PrecisionError("shift_left would shorten a fixed-length tabulated Witt vector");
  }
  Vec invert(Vec x) const {
    if (inv_[x] == kNone) throw DomainError("Witt vector is not a unit");
    return inv_[x];
  }
  Vec frob_inverse(Vec x) const { return encode_vec(witt_.frob_inverse(vecs_[x])); }

  Element component(Vec x, std::size_t i) const { return vecs_[x].c.at(i); }
  const WittVector& vector(Vec x) const { return vecs_[x]; }
  Vec encode(const WittVector& v) const { return encode_vec(v); }

  bool is_zero(Vec x) const { return x == 0; }
  bool equal(Vec a, Vec b) const { return a == b; }
  bool in_ideal(Vec x) const { return x % q_ == 0; }
  bool is_unit(Vec x) const { return inv_[x] != kNone; }

 private:
  static constexpr Vec kNone = ~Vec(0);

  WittVector decode_vec(std::uint64_t idx) const {
    WittVector v;
    for (std::size_t i = 0; i < N_; ++i) {
      v.c.push_back(codec_.decode(idx % q_));
      idx /= q_;
    }
    return v;
  }
  Vec encode_vec(const WittVector& v) const {
    std::uint64_t idx = 0, w = 1;
    for (std::size_t i = 0; i < N_; ++i) {
      idx += (i < v.size() ? codec_.encode(v.c[i]) : 0) * w;
      w *= q_;
    }
    return Vec(idx);
  }

  FiniteRingCodec codec_;
  WittRing witt_;
  std::size_t N_;
  std::uint64_t q_ = 0, size_ = 0;
  std::vector<WittVector> vecs_;
  std::vector<Vec> add_, mul_, neg_, frob_, versch_, inv_;
};

}  // namespace wdisp
