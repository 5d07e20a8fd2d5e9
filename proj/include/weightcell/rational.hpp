#pragma once
#ifndef WEIGHTCELL_RATIONAL_HPP
#define WEIGHTCELL_RATIONAL_HPP

#include <gmpxx.h>

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "weightcell/errors.hpp"

namespace weightcell {

/// Arbitrary-precision rational, always canonicalized (lowest terms, positive denominator).
using Rational = mpq_class;
using Integer = mpz_class;

using RationalVector = std::vector<Rational>;
using IntVector = std::vector<Integer>;

inline Rational make_rational(const Integer& num, const Integer& den = 1) {
  if (den == 0) throw ValidationError("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

/// "3", "-5", "1/2", "-7/3". Whitespace around the literal is ignored.
inline Rational parse_rational(std::string_view text) {
  auto first = text.find_first_not_of(" \t");
  auto last = text.find_last_not_of(" \t");
  if (first == std::string_view::npos) throw ValidationError("empty rational literal");
  std::string s(text.substr(first, last - first + 1));

  auto valid_int = [](std::string_view part) {
    std::size_t i = (!part.empty() && (part[0] == '-' || part[0] == '+')) ? 1 : 0;
    if (i == part.size()) return false;
    return std::all_of(part.begin() + static_cast<std::ptrdiff_t>(i), part.end(),
                       [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; });
  };
  auto strip_plus = [](std::string part) {
    if (!part.empty() && part[0] == '+') part.erase(0, 1);
    return part;
  };

  auto slash = s.find('/');
  if (slash == std::string::npos) {
    if (!valid_int(s)) throw ValidationError("bad rational literal '" + s + "'");
    return Rational(Integer(strip_plus(s)));
  }
  std::string num = s.substr(0, slash);
  std::string den = s.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+') {
    throw ValidationError("bad rational literal '" + s + "'");
  }
  return make_rational(Integer(strip_plus(num)), Integer(den));
}

inline std::string to_string(const Rational& q) { return q.get_str(); }
inline std::string to_string(const Integer& z) { return z.get_str(); }

inline int sign(const Rational& q) { return sgn(q); }

inline Integer gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Integer lcm(const Integer& a, const Integer& b) {
  Integer l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

/// Scales a rational vector by a positive factor to the unique primitive integer vector
/// (gcd of entries 1). The zero vector maps to the zero vector.
inline IntVector primitive(std::span<const Rational> v) {
  Integer den = 1;
  for (const auto& q : v) den = lcm(den, q.get_den());
  IntVector out;
  out.reserve(v.size());
  Integer g = 0;
  for (const auto& q : v) {
    Integer z = q.get_num() * (den / q.get_den());
    g = gcd(g, z);
    out.push_back(std::move(z));
  }
  if (g > 1) {
    for (auto& z : out) z /= g;
  }
  return out;
}

inline IntVector primitive(std::span<const Integer> v) {
  RationalVector q(v.begin(), v.end());
  return primitive(std::span<const Rational>(q));
}

inline RationalVector to_rational(std::span<const Integer> v) { return RationalVector(v.begin(), v.end()); }

template <typename A, typename B>
Rational dot(const std::vector<A>& a, const std::vector<B>& b) {
  Rational acc = 0;
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) acc += Rational(a[i]) * Rational(b[i]);
  return acc;
}

template <typename T>
std::ostream& print_vector(std::ostream& os, const std::vector<T>& v) {
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  return os << ')';
}

}  // namespace weightcell

#endif  // WEIGHTCELL_RATIONAL_HPP
