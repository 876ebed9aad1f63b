#include "polact/rational.hpp"

#include <cctype>
#include <cmath>

#include "polact/error.hpp"

namespace polact {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

Integer parse_integer(std::string_view s, std::string_view whole) {
  bool neg = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    neg = s[0] == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) fail(ErrorCode::Parse, "malformed rational '" + std::string(whole) + "'");
  Integer z(std::string(s), 10);
  return neg ? Integer(-z) : z;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) fail(ErrorCode::Parse, "empty rational");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Integer num = parse_integer(text.substr(0, slash), text);
    std::string_view den_text = text.substr(slash + 1);
    if (!all_digits(den_text)) fail(ErrorCode::Parse, "malformed rational '" + std::string(text) + "'");
    Integer den(std::string(den_text), 10);
    if (den == 0) fail(ErrorCode::Parse, "zero denominator in '" + std::string(text) + "'");
    Rational q(num, den);
    q.canonicalize();
    return q;
  }

  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = text.substr(0, dot);
    std::string_view frac_part = text.substr(dot + 1);
    bool neg = !int_part.empty() && int_part[0] == '-';
    if (!int_part.empty() && (int_part[0] == '-' || int_part[0] == '+')) int_part.remove_prefix(1);
    if ((!int_part.empty() && !all_digits(int_part)) || !all_digits(frac_part)) {
      fail(ErrorCode::Parse, "malformed decimal '" + std::string(text) + "'");
    }
    Integer ip = int_part.empty() ? Integer(0) : Integer(std::string(int_part), 10);
    Integer fp(std::string(frac_part), 10);
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac_part.size());
    Rational q(ip * scale + fp, scale);
    q.canonicalize();
    return neg ? Rational(-q) : q;
  }

  return Rational(parse_integer(text, text));
}

std::string to_string(const Rational& q) { return q.get_str(10); }

std::string to_decimal(const Rational& q, int digits) {
  Integer num = q.get_num();
  const Integer& den = q.get_den();
  bool neg = num < 0;
  if (neg) num = -num;
  Integer ip = num / den;
  Integer rem = num % den;
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  Integer frac = rem * scale / den;

  std::string out = neg && (ip != 0 || frac != 0) ? "-" : "";
  out += ip.get_str(10);
  if (frac != 0) {
    std::string f = frac.get_str(10);
    f.insert(0, static_cast<size_t>(digits) - f.size(), '0');
    while (!f.empty() && f.back() == '0') f.pop_back();
    out += "." + f;
  }
  return out;
}

Rational pow(const Rational& base, unsigned long exponent) {
  Rational out;
  mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), exponent);
  mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), exponent);
  return out;
}

Rational from_double(double v) {
  require(std::isfinite(v), ErrorCode::Domain, "non-finite float cannot be converted to a rational");
  Rational q;
  mpq_set_d(q.get_mpq_t(), v);
  return q;
}

Integer floor(const Rational& q) {
  Integer z;
  mpz_fdiv_q(z.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return z;
}

Integer ceil(const Rational& q) {
  Integer z;
  mpz_cdiv_q(z.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return z;
}

const Rational& default_tolerance() {
  static const Rational tol(1, 1000000000000UL);
  return tol;
}

}  // namespace polact
