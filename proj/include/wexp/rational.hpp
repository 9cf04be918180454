// Exact rational scalars. Thin surface over boost::multiprecision::cpp_rational,
// which keeps values canonical (gcd-reduced, positive denominator) after every
// operation; arbitrary-precision integers avoid the 64-bit overflow that
// Vandermonde determinants hit already at M = 8 with nodes in [-50, 50].

#pragma once

#include <string>

#include "wexp/types.hpp"

namespace wexp {

inline BigInt rational_numerator(const Rational& r) { return numerator(r); }
inline BigInt rational_denominator(const Rational& r) { return denominator(r); }

/// Checked division: throws std::domain_error on a zero divisor.
inline Rational rational_div(const Rational& a, const Rational& b) {
  if (b == 0) throw std::domain_error("rational division by zero");
  return a / b;
}

/// Serializes as "p/q" ("p" when q = 1), the format used by the exact CSV column.
inline std::string rational_to_string(const Rational& r) {
  const BigInt num = numerator(r);
  const BigInt den = denominator(r);
  std::string s = num.str();
  if (den != 1) s += "/" + den.str();
  return s;
}

/// Parses "p", "p/q" or "-p/q"; throws std::invalid_argument on malformed input.
inline Rational rational_from_string(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("rational_from_string: empty string");
  const auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(BigInt(s));
    const BigInt num(s.substr(0, slash));
    const BigInt den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("rational_from_string: zero denominator");
    return Rational(num, den);
  } catch (const std::runtime_error& e) {
    throw std::invalid_argument(std::string("rational_from_string: ") + e.what());
  }
}

inline Real to_real(const Rational& r) { return static_cast<Real>(r); }

}  // namespace wexp
