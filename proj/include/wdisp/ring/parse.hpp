#pragma once

#include <cctype>
#include <string>
#include <string_view>

#include "wdisp/ring/ring.hpp"

namespace wdisp {

namespace detail {

/// Recursive-descent parser for ring element expressions:
///   expr := term (('+'|'-') term)*
///   term := unary (('*'|'/') unary)*
///   unary := '-' unary | power
///   power := atom ('^' '-'? integer)?
///   atom := integer | identifier | '(' expr ')'
class ExprParser {
 public:
  ExprParser(std::string_view text, const Ring& ring) : s_(text), r_(ring) {}

  Element parse() {
    Element e = expr();
    skip();
    if (i_ != s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("cannot parse '" + std::string(s_) + "': " + what + " at offset " + std::to_string(i_));
  }
  void skip() {
    while (i_ < s_.size() && std::isspace((unsigned char)s_[i_])) ++i_;
  }
  bool eat(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }
  Element expr() {
    Element acc = term();
    for (;;) {
      if (eat('+')) acc = r_.add(acc, term());
      else if (eat('-')) acc = r_.sub(acc, term());
      else return acc;
    }
  }
  Element term() {
    Element acc = unary();
    for (;;) {
      if (eat('*')) acc = r_.mul(acc, unary());
      else if (eat('/')) {
        Element d = unary();
        if (r_.is_rational() && d.terms.size() == 1 &&
            std::all_of(d.terms[0].m.begin(), d.terms[0].m.end(), [](Exponent e) { return e == 0; })) {
          Rational q(d.den, d.terms[0].c);
          q.canonicalize();
          acc = r_.mul(acc, r_.from_rational(q));
        } else {
          try {
            acc = r_.mul(acc, r_.invert(d));
          } catch (const DomainError& e) {
            throw ParseError(std::string("division by a non-unit: ") + e.what());
          }
        }
      } else return acc;
    }
  }
  Element unary() {
    if (eat('-')) return r_.neg(unary());
    if (eat('+')) return unary();
    return power();
  }
  Element power() {
    Element base = atom();
    if (eat('^')) {
      bool negative = eat('-');
      skip();
      std::size_t start = i_;
      while (i_ < s_.size() && std::isdigit((unsigned char)s_[i_])) ++i_;
      if (start == i_) fail("expected exponent");
      Integer e(std::string(s_.substr(start, i_ - start)), 10);
      if (negative) {
        try {
          base = r_.invert(base);
        } catch (const DomainError& err) {
          throw ParseError(std::string("negative power of a non-unit: ") + err.what());
        }
      }
      return r_.pow(base, e);
    }
    return base;
  }
  Element atom() {
    skip();
    if (i_ >= s_.size()) fail("unexpected end of input");
    char c = s_[i_];
    if (c == '(') {
      ++i_;
      Element e = expr();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit((unsigned char)c)) {
      std::size_t start = i_;
      while (i_ < s_.size() && std::isdigit((unsigned char)s_[i_])) ++i_;
      return r_.from_integer(Integer(std::string(s_.substr(start, i_ - start)), 10));
    }
    if (std::isalpha((unsigned char)c) || c == '_') {
      std::size_t start = i_;
      while (i_ < s_.size() && (std::isalnum((unsigned char)s_[i_]) || s_[i_] == '_')) ++i_;
      std::string name(s_.substr(start, i_ - start));
      if (r_.has_gen() && name == r_.shape().gen_name) return r_.generator();
      const auto& vars = r_.var_names();
      auto it = std::find(vars.begin(), vars.end(), name);
      if (it == vars.end()) fail("unknown identifier '" + name + "'");
      return r_.variable(std::size_t(it - vars.begin()));
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  const Ring& r_;
  std::size_t i_ = 0;
};

inline std::vector<std::string> split_top(std::string_view text, char sep) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : text) {
    if (c == '(' || c == '[' || c == '{') ++depth;
    if (c == ')' || c == ']' || c == '}') --depth;
    if (c == sep && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

inline std::string strip(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace((unsigned char)s[a])) ++a;
  while (b > a && std::isspace((unsigned char)s[b - 1])) --b;
  return std::string(s.substr(a, b - a));
}

/// Monic polynomial in one named variable with integer coefficients.
inline std::vector<Integer> parse_univariate(const std::string& text, std::string& name) {
  std::string ident;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (std::isalpha((unsigned char)text[i]) || text[i] == '_') {
      std::size_t j = i;
      while (j < text.size() && (std::isalnum((unsigned char)text[j]) || text[j] == '_')) ++j;
      std::string id = text.substr(i, j - i);
      if (!ident.empty() && id != ident) throw ParseError("polynomial '" + text + "' uses more than one variable");
      ident = id;
      i = j - 1;
    }
  }
  if (ident.empty()) throw ParseError("polynomial '" + text + "' has no variable");
  name = ident;
  Ring zx = Ring::polynomial(Ring::integers(), {ident});
  Element e = ExprParser(text, zx).parse();
  std::vector<Integer> coeffs;
  for (const auto& t : e.terms) {
    if (t.m[0] < 0) throw ParseError("negative exponent in polynomial '" + text + "'");
    if (coeffs.size() <= std::size_t(t.m[0])) coeffs.resize(t.m[0] + 1, Integer(0));
    coeffs[t.m[0]] = t.c;
  }
  return coeffs;
}

}  // namespace detail

inline Element parse_element(std::string_view text, const Ring& ring) {
  return detail::ExprParser(text, ring).parse();
}

/// Parses descriptors such as "Z", "Z/9", "Q", "GF(2^2)", "GF(4;z^2+z+1)",
/// "Z/8{z^2+z+1}", "Z/4[u1,u2]/(2,u1)^3" and "Z/9[b,1/f]".
inline Ring parse_ring(std::string_view text_in) {
  std::string text = detail::strip(text_in);
  std::string t;
  for (char c : text)
    if (!std::isspace((unsigned char)c)) t += c;
  if (t.empty()) throw ParseError("empty ring descriptor");
  std::size_t i = 0;
  auto fail = [&](const std::string& what) -> Ring { throw ParseError("ring descriptor '" + text + "': " + what); };
  auto read_int = [&]() {
    std::size_t s = i;
    while (i < t.size() && std::isdigit((unsigned char)t[i])) ++i;
    if (s == i) fail("expected an integer");
    return Integer(t.substr(s, i - s), 10);
  };
  Ring base;
  if (t.compare(0, 3, "GF(") == 0) {
    i = 3;
    Integer p = read_int();
    unsigned m = 1;
    if (i < t.size() && t[i] == '^') {
      ++i;
      m = unsigned(read_int().get_ui());
    } else if (p.fits_ulong_p() && !is_prime(p.get_ui())) {
      // GF(q) with q a prime power
      Integer q = p;
      for (unsigned long l = 2; Integer(l) <= q; ++l) {
        if (divisible(q, Integer(l))) {
          unsigned long v = valuation(q, l);
          if (ipow(l, v) != q) fail("GF order is not a prime power");
          p = l;
          m = unsigned(v);
          break;
        }
      }
    }
    std::vector<Integer> poly;
    std::string gen = "z";
    if (i < t.size() && t[i] == ';') {
      std::size_t close = t.find(')', i);
      if (close == std::string::npos) fail("missing ')'");
      poly = detail::parse_univariate(t.substr(i + 1, close - i - 1), gen);
      i = close;
    }
    if (i >= t.size() || t[i] != ')') fail("missing ')'");
    ++i;
    if (!p.fits_ulong_p()) fail("characteristic too large");
    try {
      base = Ring::finite_field(p.get_ui(), m, poly, gen);
    } catch (const DomainError& e) {
      throw ParseError(e.what());
    }
  } else if (t[0] == 'Z') {
    i = 1;
    if (i < t.size() && t[i] == '/' && i + 1 < t.size() && std::isdigit((unsigned char)t[i + 1])) {
      ++i;
      Integer m = read_int();
      if (m < 2) fail("modulus must be at least 2");
      if (i < t.size() && t[i] == '{') {
        std::size_t close = t.find('}', i);
        if (close == std::string::npos) fail("missing '}'");
        RingShape s;
        s.kind = CoeffKind::Modular;
        s.modulus = m;
        s.gen_poly = detail::parse_univariate(t.substr(i + 1, close - i - 1), s.gen_name);
        i = close + 1;
        base = Ring(s);
      } else {
        base = Ring::modular(m);
      }
    } else {
      base = Ring::integers();
    }
  } else if (t[0] == 'Q') {
    i = 1;
    base = Ring::rationals();
  } else {
    fail("unknown base ring");
  }
  if (i < t.size() && t[i] == '[') {
    std::size_t close = t.find(']', i);
    if (close == std::string::npos) fail("missing ']'");
    std::vector<std::string> names, inv;
    for (auto& item : detail::split_top(t.substr(i + 1, close - i - 1), ',')) {
      if (item.empty()) fail("empty variable name");
      if (item.compare(0, 2, "1/") == 0) {
        names.push_back(item.substr(2));
        inv.push_back(item.substr(2));
      } else {
        names.push_back(item);
      }
    }
    i = close + 1;
    try {
      base = Ring::polynomial(base, names, inv);
    } catch (const DomainError& e) {
      throw ParseError(e.what());
    }
  }
  if (i < t.size() && t[i] == '/') {
    if (i + 1 >= t.size() || t[i + 1] != '(') fail("expected '/(' for a quotient");
    std::size_t close = t.find(')', i);
    if (close == std::string::npos) fail("missing ')'");
    auto gens = detail::split_top(t.substr(i + 2, close - i - 2), ',');
    i = close + 1;
    unsigned M = 1;
    if (i < t.size() && t[i] == '^') {
      ++i;
      M = unsigned(read_int().get_ui());
    }
    try {
      base = Ring::quotient(base, gens, M);
    } catch (const DomainError& e) {
      throw ParseError(e.what());
    }
  }
  if (i != t.size()) fail("trailing characters");
  return base;
}

}  // namespace wdisp
