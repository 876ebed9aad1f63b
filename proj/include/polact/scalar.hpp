#pragma once

#include <string>
#include <string_view>
#include <variant>

#include "polact/enclosure.hpp"
#include "polact/rational.hpp"

namespace polact {

enum class ScalarMode { ExactReal, ExactComplex, Float };

std::string_view mode_name(ScalarMode m);
ScalarMode parse_mode(std::string_view name);

struct ComplexRational {
  Rational re;
  Rational im;
};

struct FloatValue {
  double value;
  double tol;
};

inline constexpr double kDefaultFloatTolerance = 1e-9;

// A scalar in one of three modes. Arithmetic between different modes is an
// error; use to_mode() to convert explicitly.
class Scalar {
 public:
  Scalar() : v_(Rational(0)) {}
  Scalar(Rational q) : v_(std::move(q)) {}  // NOLINT: rationals are the common case
  Scalar(long v) : v_(Rational(v)) {}       // NOLINT

  static Scalar real(Rational q) { return Scalar(std::move(q)); }
  static Scalar complex(Rational re, Rational im);
  static Scalar floating(double v, double tol = kDefaultFloatTolerance);

  // "p/q" in ExactReal, "p/q+r/s i" in ExactComplex, shortest round-trip decimal in Float.
  static Scalar parse(std::string_view text, ScalarMode mode);
  std::string to_string() const;

  ScalarMode mode() const;
  bool is_zero() const;
  bool is_one() const;

  const Rational& real_part() const;  // ExactReal only
  const ComplexRational& complex_value() const;  // ExactComplex only
  double float_value() const;  // Float only
  double float_tolerance() const;  // Float only

  // ExactReal value, or the exact dyadic value of a Float.
  Rational exact_real() const;

  // Converts between modes. Float -> exact is exact on the dyadic value;
  // exact -> Float rounds; complex -> real requires a zero imaginary part.
  Scalar to_mode(ScalarMode target) const;

  // Exact squared modulus (Float uses the exact dyadic value).
  Rational abs2() const;
  // Modulus as a certified enclosure; exact for real and float values.
  Enclosure abs(const Rational& tol = default_tolerance()) const;
  // Real and strictly positive (ExactReal or Float).
  bool is_positive_real() const;

  Scalar inverse() const;
  Scalar one_like() const;

  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a);

  // Exact comparison in exact modes; Float compares within the larger tolerance.
  friend bool operator==(const Scalar& a, const Scalar& b);
  // Bitwise-exact comparison in every mode, including Float.
  friend bool identical(const Scalar& a, const Scalar& b);

 private:
  explicit Scalar(std::variant<Rational, ComplexRational, FloatValue> v) : v_(std::move(v)) {}

  std::variant<Rational, ComplexRational, FloatValue> v_;
};

Scalar pow(const Scalar& base, unsigned long exponent);

// Exact comparison of moduli through squared values.
int compare_abs(const Scalar& a, const Scalar& b);
// Sign of a real scalar (ExactReal or Float).
int real_sign(const Scalar& s);

}  // namespace polact
