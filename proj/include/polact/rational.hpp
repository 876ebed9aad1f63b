#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace polact {

using Rational = mpq_class;
using Integer = mpz_class;

// Accepts "p", "p/q", and plain decimals such as "-0.125"; the result is canonical.
Rational parse_rational(std::string_view text);

// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& q);

// Fixed-point rendering truncated toward zero after `digits` fractional digits,
// trailing zeros removed.
std::string to_decimal(const Rational& q, int digits = 24);

Rational pow(const Rational& base, unsigned long exponent);

// Every finite double is a dyadic rational; this conversion is exact.
Rational from_double(double v);

inline int sign(const Rational& q) { return sgn(q); }

Integer floor(const Rational& q);
Integer ceil(const Rational& q);

// 1/10^12, the tolerance used for certified enclosures unless a caller asks otherwise.
const Rational& default_tolerance();

}  // namespace polact
