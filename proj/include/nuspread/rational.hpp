#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace nuspread {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Parses "3/10", "0.3", "1e-2" or "7" into an exact rational.
/// Decimal notation is interpreted exactly (0.1 is 1/10, not the nearest double).
Rational parse_rational(std::string_view text);

/// Canonical "p/q" form ("p" when q == 1).
std::string to_string(const Rational& value);
std::string to_string(const BigInt& value);

inline double to_double(const Rational& value) { return value.get_d(); }

/// Exact rational for a finite double (every binary double is a dyadic rational).
Rational from_double(double value);

Rational pow(const Rational& base, unsigned long exponent);

inline Rational min(const Rational& a, const Rational& b) { return a < b ? a : b; }
inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

/// num / den in canonical form. The two-argument mpq_class constructor does not reduce.
inline Rational ratio(const BigInt& num, const BigInt& den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

}  // namespace nuspread
