#include "polact/scalar.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "polact/error.hpp"

namespace polact {

namespace {

[[noreturn]] void mode_mismatch(const Scalar& a, const Scalar& b) {
  fail(ErrorCode::ModeMismatch, "scalar mode mismatch: " + std::string(mode_name(a.mode())) + " vs " +
                                    std::string(mode_name(b.mode())));
}

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  double v = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    fail(ErrorCode::Parse, "malformed float '" + std::string(s) + "'");
  }
  return v;
}

ComplexRational parse_complex(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (c != ' ') s.push_back(c);
  }
  if (s.empty()) fail(ErrorCode::Parse, "empty complex scalar");
  if (s.back() != 'i') return {parse_rational(s), Rational(0)};
  s.pop_back();
  // Split at the last sign that is not the leading one.
  size_t split = std::string::npos;
  for (size_t i = s.size(); i-- > 1;) {
    if (s[i] == '+' || s[i] == '-') {
      split = i;
      break;
    }
  }
  if (split == std::string::npos) {
    if (s.empty() || s == "+") return {Rational(0), Rational(1)};
    if (s == "-") return {Rational(0), Rational(-1)};
    return {Rational(0), parse_rational(s)};
  }
  std::string re = s.substr(0, split);
  std::string im = s.substr(split);
  if (im == "+") im = "1";
  if (im == "-") im = "-1";
  if (im[0] == '+') im.erase(0, 1);
  return {parse_rational(re), parse_rational(im)};
}

}  // namespace

std::string_view mode_name(ScalarMode m) {
  switch (m) {
    case ScalarMode::ExactReal:
      return "real";
    case ScalarMode::ExactComplex:
      return "complex";
    case ScalarMode::Float:
      return "float";
  }
  return "?";
}

ScalarMode parse_mode(std::string_view name) {
  if (name == "real" || name == "exact") return ScalarMode::ExactReal;
  if (name == "complex") return ScalarMode::ExactComplex;
  if (name == "float") return ScalarMode::Float;
  fail(ErrorCode::Parse, "unknown scalar mode '" + std::string(name) + "'");
}

Scalar Scalar::complex(Rational re, Rational im) {
  return Scalar(std::variant<Rational, ComplexRational, FloatValue>(ComplexRational{std::move(re), std::move(im)}));
}

Scalar Scalar::floating(double v, double tol) {
  require(std::isfinite(v), ErrorCode::Domain, "non-finite float scalar");
  require(tol >= 0, ErrorCode::InvalidArgument, "negative float tolerance");
  return Scalar(std::variant<Rational, ComplexRational, FloatValue>(FloatValue{v, tol}));
}

Scalar Scalar::parse(std::string_view text, ScalarMode mode) {
  switch (mode) {
    case ScalarMode::ExactReal:
      return Scalar(parse_rational(text));
    case ScalarMode::ExactComplex: {
      auto c = parse_complex(text);
      return complex(c.re, c.im);
    }
    case ScalarMode::Float:
      return floating(parse_double(text));
  }
  fail(ErrorCode::Parse, "bad mode");
}

std::string Scalar::to_string() const {
  switch (mode()) {
    case ScalarMode::ExactReal:
      return polact::to_string(std::get<Rational>(v_));
    case ScalarMode::ExactComplex: {
      const auto& c = std::get<ComplexRational>(v_);
      std::string out = polact::to_string(c.re);
      if (c.im < 0) {
        out += "-" + polact::to_string(Rational(-c.im));
      } else {
        out += "+" + polact::to_string(c.im);
      }
      return out + " i";
    }
    case ScalarMode::Float:
      return format_double(std::get<FloatValue>(v_).value);
  }
  return {};
}

ScalarMode Scalar::mode() const {
  switch (v_.index()) {
    case 0:
      return ScalarMode::ExactReal;
    case 1:
      return ScalarMode::ExactComplex;
    default:
      return ScalarMode::Float;
  }
}

bool Scalar::is_zero() const {
  switch (mode()) {
    case ScalarMode::ExactReal:
      return std::get<Rational>(v_) == 0;
    case ScalarMode::ExactComplex: {
      const auto& c = std::get<ComplexRational>(v_);
      return c.re == 0 && c.im == 0;
    }
    case ScalarMode::Float:
      return std::get<FloatValue>(v_).value == 0.0;
  }
  return false;
}

bool Scalar::is_one() const {
  switch (mode()) {
    case ScalarMode::ExactReal:
      return std::get<Rational>(v_) == 1;
    case ScalarMode::ExactComplex: {
      const auto& c = std::get<ComplexRational>(v_);
      return c.re == 1 && c.im == 0;
    }
    case ScalarMode::Float:
      return std::get<FloatValue>(v_).value == 1.0;
  }
  return false;
}

const Rational& Scalar::real_part() const {
  require(mode() == ScalarMode::ExactReal, ErrorCode::ModeMismatch, "scalar is not ExactReal");
  return std::get<Rational>(v_);
}

const ComplexRational& Scalar::complex_value() const {
  require(mode() == ScalarMode::ExactComplex, ErrorCode::ModeMismatch, "scalar is not ExactComplex");
  return std::get<ComplexRational>(v_);
}

double Scalar::float_value() const {
  require(mode() == ScalarMode::Float, ErrorCode::ModeMismatch, "scalar is not Float");
  return std::get<FloatValue>(v_).value;
}

double Scalar::float_tolerance() const {
  require(mode() == ScalarMode::Float, ErrorCode::ModeMismatch, "scalar is not Float");
  return std::get<FloatValue>(v_).tol;
}

Rational Scalar::exact_real() const {
  switch (mode()) {
    case ScalarMode::ExactReal:
      return std::get<Rational>(v_);
    case ScalarMode::Float:
      return from_double(std::get<FloatValue>(v_).value);
    case ScalarMode::ExactComplex:
      break;
  }
  fail(ErrorCode::ModeMismatch, "complex scalar has no real value");
}

Scalar Scalar::to_mode(ScalarMode target) const {
  if (target == mode()) return *this;
  switch (target) {
    case ScalarMode::ExactReal:
      if (mode() == ScalarMode::ExactComplex) {
        const auto& c = std::get<ComplexRational>(v_);
        require(c.im == 0, ErrorCode::ModeMismatch, "complex scalar with nonzero imaginary part is not real");
        return Scalar(c.re);
      }
      return Scalar(exact_real());
    case ScalarMode::ExactComplex:
      return complex(exact_real(), Rational(0));
    case ScalarMode::Float:
      if (mode() == ScalarMode::ExactComplex) {
        const auto& c = std::get<ComplexRational>(v_);
        require(c.im == 0, ErrorCode::ModeMismatch, "complex scalar has no float representation");
        return floating(c.re.get_d());
      }
      return floating(std::get<Rational>(v_).get_d());
  }
  return *this;
}

Rational Scalar::abs2() const {
  if (mode() == ScalarMode::ExactComplex) {
    const auto& c = std::get<ComplexRational>(v_);
    return c.re * c.re + c.im * c.im;
  }
  Rational r = exact_real();
  return r * r;
}

Enclosure Scalar::abs(const Rational& tol) const {
  if (mode() == ScalarMode::ExactComplex) {
    const auto& c = std::get<ComplexRational>(v_);
    if (c.im == 0) return Enclosure::exact(::abs(c.re));
    if (c.re == 0) return Enclosure::exact(::abs(c.im));
    return sqrt_enclosure(abs2(), tol);
  }
  return Enclosure::exact(::abs(exact_real()));
}

bool Scalar::is_positive_real() const {
  switch (mode()) {
    case ScalarMode::ExactReal:
      return std::get<Rational>(v_) > 0;
    case ScalarMode::Float:
      return std::get<FloatValue>(v_).value > 0;
    case ScalarMode::ExactComplex:
      return false;
  }
  return false;
}

Scalar Scalar::inverse() const {
  require(!is_zero(), ErrorCode::Domain, "inverse of zero");
  switch (mode()) {
    case ScalarMode::ExactReal:
      return Scalar(Rational(1 / std::get<Rational>(v_)));
    case ScalarMode::ExactComplex: {
      const auto& c = std::get<ComplexRational>(v_);
      Rational n = c.re * c.re + c.im * c.im;
      return complex(c.re / n, -c.im / n);
    }
    case ScalarMode::Float: {
      const auto& f = std::get<FloatValue>(v_);
      return floating(1.0 / f.value, f.tol);
    }
  }
  return *this;
}

Scalar Scalar::one_like() const {
  switch (mode()) {
    case ScalarMode::ExactReal:
      return Scalar(Rational(1));
    case ScalarMode::ExactComplex:
      return complex(Rational(1), Rational(0));
    case ScalarMode::Float:
      return floating(1.0, std::get<FloatValue>(v_).tol);
  }
  return *this;
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  if (a.mode() != b.mode()) mode_mismatch(a, b);
  switch (a.mode()) {
    case ScalarMode::ExactReal:
      return Scalar(Rational(std::get<Rational>(a.v_) + std::get<Rational>(b.v_)));
    case ScalarMode::ExactComplex: {
      const auto& x = std::get<ComplexRational>(a.v_);
      const auto& y = std::get<ComplexRational>(b.v_);
      return Scalar::complex(x.re + y.re, x.im + y.im);
    }
    case ScalarMode::Float: {
      const auto& x = std::get<FloatValue>(a.v_);
      const auto& y = std::get<FloatValue>(b.v_);
      return Scalar::floating(x.value + y.value, std::max(x.tol, y.tol));
    }
  }
  return a;
}

Scalar operator-(const Scalar& a) {
  switch (a.mode()) {
    case ScalarMode::ExactReal:
      return Scalar(Rational(-std::get<Rational>(a.v_)));
    case ScalarMode::ExactComplex: {
      const auto& x = std::get<ComplexRational>(a.v_);
      return Scalar::complex(-x.re, -x.im);
    }
    case ScalarMode::Float: {
      const auto& x = std::get<FloatValue>(a.v_);
      return Scalar::floating(-x.value, x.tol);
    }
  }
  return a;
}

Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

Scalar operator*(const Scalar& a, const Scalar& b) {
  if (a.mode() != b.mode()) mode_mismatch(a, b);
  switch (a.mode()) {
    case ScalarMode::ExactReal:
      return Scalar(Rational(std::get<Rational>(a.v_) * std::get<Rational>(b.v_)));
    case ScalarMode::ExactComplex: {
      const auto& x = std::get<ComplexRational>(a.v_);
      const auto& y = std::get<ComplexRational>(b.v_);
      return Scalar::complex(x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re);
    }
    case ScalarMode::Float: {
      const auto& x = std::get<FloatValue>(a.v_);
      const auto& y = std::get<FloatValue>(b.v_);
      return Scalar::floating(x.value * y.value, std::max(x.tol, y.tol));
    }
  }
  return a;
}

Scalar operator/(const Scalar& a, const Scalar& b) {
  if (a.mode() != b.mode()) mode_mismatch(a, b);
  require(!b.is_zero(), ErrorCode::Domain, "division by zero");
  if (a.mode() == ScalarMode::Float) {
    const auto& x = std::get<FloatValue>(a.v_);
    const auto& y = std::get<FloatValue>(b.v_);
    return Scalar::floating(x.value / y.value, std::max(x.tol, y.tol));
  }
  if (a.mode() == ScalarMode::ExactReal) {
    return Scalar(Rational(std::get<Rational>(a.v_) / std::get<Rational>(b.v_)));
  }
  return a * b.inverse();
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.mode() != b.mode()) mode_mismatch(a, b);
  if (a.mode() == ScalarMode::Float) {
    const auto& x = std::get<FloatValue>(a.v_);
    const auto& y = std::get<FloatValue>(b.v_);
    return std::fabs(x.value - y.value) <= std::max(x.tol, y.tol);
  }
  return identical(a, b);
}

bool identical(const Scalar& a, const Scalar& b) {
  if (a.mode() != b.mode()) return false;
  switch (a.mode()) {
    case ScalarMode::ExactReal:
      return std::get<Rational>(a.v_) == std::get<Rational>(b.v_);
    case ScalarMode::ExactComplex: {
      const auto& x = std::get<ComplexRational>(a.v_);
      const auto& y = std::get<ComplexRational>(b.v_);
      return x.re == y.re && x.im == y.im;
    }
    case ScalarMode::Float:
      return std::get<FloatValue>(a.v_).value == std::get<FloatValue>(b.v_).value;
  }
  return false;
}

Scalar pow(const Scalar& base, unsigned long exponent) {
  if (base.mode() == ScalarMode::ExactReal) return Scalar(pow(base.real_part(), exponent));
  Scalar result = base.one_like();
  Scalar b = base;
  while (exponent > 0) {
    if (exponent & 1UL) result = result * b;
    exponent >>= 1;
    if (exponent > 0) b = b * b;
  }
  return result;
}

int compare_abs(const Scalar& a, const Scalar& b) {
  Rational x = a.abs2(), y = b.abs2();
  return x < y ? -1 : (x > y ? 1 : 0);
}

int real_sign(const Scalar& s) { return sign(s.exact_real()); }

}  // namespace polact
