#include "polact/enclosure.hpp"

#include <algorithm>
#include <utility>

#include "polact/error.hpp"

namespace polact {

Enclosure::Enclosure(Rational l, Rational h) : lo(std::move(l)), hi(std::move(h)) {
  require(lo <= hi, ErrorCode::InvalidArgument, "enclosure with lo > hi");
}

const Rational& Enclosure::value() const {
  require(is_exact(), ErrorCode::Undecided, "enclosure " + to_string() + " is not an exact value");
  return lo;
}

std::string Enclosure::to_string() const {
  if (is_exact()) return polact::to_string(lo);
  return "[" + polact::to_string(lo) + ", " + polact::to_string(hi) + "]";
}

Enclosure operator+(const Enclosure& a, const Enclosure& b) { return {a.lo + b.lo, a.hi + b.hi}; }

Enclosure operator-(const Enclosure& a, const Enclosure& b) { return {a.lo - b.hi, a.hi - b.lo}; }

Enclosure operator*(const Enclosure& a, const Enclosure& b) {
  Rational p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  return {*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
}

Enclosure operator*(const Rational& s, const Enclosure& a) {
  if (s >= 0) return {s * a.lo, s * a.hi};
  return {s * a.hi, s * a.lo};
}

Enclosure max(const Enclosure& a, const Enclosure& b) {
  return {std::max(a.lo, b.lo), std::max(a.hi, b.hi)};
}

Enclosure abs(const Enclosure& a) {
  if (a.lo >= 0) return a;
  if (a.hi <= 0) return {-a.hi, -a.lo};
  return {Rational(0), std::max(Rational(-a.lo), a.hi)};
}

bool operator==(const Enclosure& a, const Enclosure& b) { return a.lo == b.lo && a.hi == b.hi; }

Enclosure sqrt_enclosure(const Rational& q, const Rational& tol) {
  require(q >= 0, ErrorCode::Domain, "square root of a negative rational");
  require(tol > 0, ErrorCode::InvalidArgument, "tolerance must be positive");

  Integer rn, rd;
  if (mpz_perfect_square_p(q.get_num_mpz_t()) && mpz_perfect_square_p(q.get_den_mpz_t())) {
    mpz_sqrt(rn.get_mpz_t(), q.get_num_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), q.get_den_mpz_t());
    return Enclosure::exact(Rational(rn, rd));
  }

  // Pick k with 2^-k <= tol, then bracket sqrt(q * 4^k) between consecutive integers.
  unsigned long k = 0;
  Rational step(1);
  while (step > tol) {
    step /= 2;
    ++k;
  }
  Integer scaled = q.get_num() << (2 * k);
  Integer t = scaled / q.get_den();
  Integer s;
  mpz_sqrt(s.get_mpz_t(), t.get_mpz_t());
  Integer two_k = Integer(1) << k;
  Rational lo(s, two_k), hi(s + 1, two_k);
  lo.canonicalize();
  hi.canonicalize();
  return {lo, hi};
}

}  // namespace polact
