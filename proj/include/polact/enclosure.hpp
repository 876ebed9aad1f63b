#pragma once

#include <string>

#include "polact/rational.hpp"

namespace polact {

// Closed interval [lo, hi] with rational endpoints. A degenerate interval is an
// exact value; otherwise the true quantity is certified to lie inside.
struct Enclosure {
  Rational lo;
  Rational hi;

  Enclosure() = default;
  Enclosure(Rational l, Rational h);
  static Enclosure exact(const Rational& v) { return {v, v}; }

  bool is_exact() const { return lo == hi; }
  Rational width() const { return hi - lo; }
  Rational midpoint() const { return (lo + hi) / 2; }
  bool contains(const Rational& v) const { return lo <= v && v <= hi; }

  // Only meaningful when is_exact().
  const Rational& value() const;

  std::string to_string() const;
};

Enclosure operator+(const Enclosure& a, const Enclosure& b);
Enclosure operator-(const Enclosure& a, const Enclosure& b);
Enclosure operator*(const Enclosure& a, const Enclosure& b);
Enclosure operator*(const Rational& s, const Enclosure& a);
Enclosure max(const Enclosure& a, const Enclosure& b);
Enclosure abs(const Enclosure& a);
bool operator==(const Enclosure& a, const Enclosure& b);

// a <= b for every pair of points in the two intervals.
inline bool certainly_le(const Enclosure& a, const Enclosure& b) { return a.hi <= b.lo; }
// a > b for every pair of points.
inline bool certainly_gt(const Enclosure& a, const Enclosure& b) { return a.lo > b.hi; }
inline bool overlaps(const Enclosure& a, const Enclosure& b) { return a.lo <= b.hi && b.lo <= a.hi; }

// Enclosure of sqrt(q) for q >= 0 with width at most tol; exact when q is a
// square of a rational.
Enclosure sqrt_enclosure(const Rational& q, const Rational& tol);

}  // namespace polact
