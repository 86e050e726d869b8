#pragma once

#include <gmpxx.h>

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "wdisp/core/errors.hpp"

namespace wdisp {

using Integer = mpz_class;
using Rational = mpq_class;

inline Integer ipow(const Integer& base, unsigned long exponent) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exponent);
  return r;
}

inline Integer ipow(unsigned long base, unsigned long exponent) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), base, exponent);
  return r;
}

/// Representative of a mod m in [0, m).
inline Integer mod_floor(const Integer& a, const Integer& m) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

inline void mod_floor_inplace(Integer& a, const Integer& m) {
  mpz_fdiv_r(a.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
}

inline Integer gcd(const Integer& a, const Integer& b) {
  Integer r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline bool divisible(const Integer& a, const Integer& d) {
  return mpz_divisible_p(a.get_mpz_t(), d.get_mpz_t()) != 0;
}

/// Exact quotient; the caller guarantees divisibility.
inline Integer exact_div(const Integer& a, const Integer& d) {
  Integer r;
  mpz_divexact(r.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t());
  return r;
}

/// Inverse of a modulo m; returns false when gcd(a, m) != 1.
inline bool mod_inverse(const Integer& a, const Integer& m, Integer& out) {
  if (m == 1) {
    out = 0;
    return true;
  }
  return mpz_invert(out.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) != 0;
}

/// p-adic valuation of a nonzero integer.
inline unsigned long valuation(const Integer& a, unsigned long p) {
  if (a == 0) return ~0ul;
  Integer t = a;
  unsigned long v = 0;
  while (mpz_divisible_ui_p(t.get_mpz_t(), p)) {
    mpz_divexact_ui(t.get_mpz_t(), t.get_mpz_t(), p);
    ++v;
  }
  return v;
}

inline unsigned long valuation(const Rational& q, unsigned long p) {
  return valuation(Integer(q.get_num()), p);
}

inline std::string to_string(const Integer& a) { return a.get_str(10); }

inline std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str(10);
  return q.get_num().get_str(10) + "/" + q.get_den().get_str(10);
}

inline Integer parse_integer(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw ParseError("empty integer literal");
  std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (start == s.size()) throw ParseError("malformed integer literal '" + s + "'");
  for (std::size_t i = start; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i])))
      throw ParseError("malformed integer literal '" + s + "'");
  }
  if (s[0] == '+') s.erase(0, 1);
  return Integer(s, 10);
}

/// Parses "a" or "a/b".
inline Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text));
  Integer num = parse_integer(text.substr(0, slash));
  Integer den = parse_integer(text.substr(slash + 1));
  if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline bool is_prime(unsigned long n) {
  if (n < 2) return false;
  for (unsigned long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// Distinct prime factors by trial division (desk-scale moduli).
inline std::vector<Integer> prime_factors(Integer m) {
  std::vector<Integer> out;
  if (m < 0) m = -m;
  for (unsigned long d = 2; Integer(d) * d <= m; ++d) {
    if (mpz_divisible_ui_p(m.get_mpz_t(), d)) {
      out.emplace_back(d);
      while (mpz_divisible_ui_p(m.get_mpz_t(), d)) mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), d);
    }
    if (d > 10000000ul) throw ResourceError("modulus too large to factor by trial division");
  }
  if (m > 1) out.push_back(m);
  return out;
}

}  // namespace wdisp
