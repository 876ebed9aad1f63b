#pragma once

// Test helpers and independent brute-force oracles. Nothing here calls the
// closed-form code paths it is used to check.

#include <initializer_list>
#include <random>
#include <string>
#include <vector>

#include "polact/seqspace.hpp"

namespace testing_support {

using namespace polact;

inline Rational q(const char* s) { return parse_rational(s); }
inline Rational rat(long num, long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}
inline Scalar R(const char* s) { return Scalar(parse_rational(s)); }
inline Scalar C(const char* re, const char* im) { return Scalar::complex(parse_rational(re), parse_rational(im)); }

inline std::vector<Scalar> reals(std::initializer_list<const char*> xs) {
  std::vector<Scalar> out;
  for (auto x : xs) out.push_back(R(x));
  return out;
}

inline TailedSeq geom(Index base, std::initializer_list<const char*> prefix, const char* a, const char* r) {
  return TailedSeq::geometric(base, reals(prefix), R(a), R(r));
}

inline TailedSeq cons(Index base, std::initializer_list<const char*> prefix, const char* c) {
  return TailedSeq::constant(base, reals(prefix), R(c));
}

inline GroupElement gelem(Index base, std::initializer_list<const char*> prefix,
                          GroupDomain d = GroupDomain::PositiveReal) {
  return GroupElement::from_prefix(d, base, reals(prefix));
}

// Truncated sum of |x(n) - y(n)| for n in [from, from + terms), real data only,
// entry-by-entry.
inline Rational brute_abs_diff_sum(const TailedSeq& x, const TailedSeq& y, Index from, Index terms) {
  Rational total = 0;
  for (Index n = from; n < from + terms; ++n) total += abs(x.entry(n).exact_real() - y.entry(n).exact_real());
  return total;
}

inline Rational brute_abs_sum(const TailedSeq& x, Index from, Index terms) {
  Rational total = 0;
  for (Index n = from; n < from + terms; ++n) total += abs(x.entry(n).exact_real());
  return total;
}

// Random small nonzero rational with numerator in [1, num_max], denominator in [1, den_max].
inline Rational random_positive(std::mt19937_64& rng, int num_max = 9, int den_max = 9) {
  std::uniform_int_distribution<int> num(1, num_max), den(1, den_max);
  Rational r(num(rng), den(rng));
  r.canonicalize();
  return r;
}

inline Rational random_nonzero(std::mt19937_64& rng, int num_max = 9, int den_max = 9) {
  Rational r = random_positive(rng, num_max, den_max);
  return std::bernoulli_distribution(0.5)(rng) ? r : Rational(-r);
}

inline GroupElement random_g(std::mt19937_64& rng, Index base, size_t len) {
  std::vector<Scalar> p;
  for (size_t i = 0; i < len; ++i) p.push_back(Scalar(random_positive(rng)));
  return GroupElement::from_prefix(GroupDomain::PositiveReal, base, std::move(p));
}

inline GroupElement random_h(std::mt19937_64& rng, size_t len) {
  std::vector<Scalar> p;
  for (size_t i = 0; i < len; ++i) {
    Rational re = random_nonzero(rng), im = random_nonzero(rng);
    p.push_back(Scalar::complex(re, im));
  }
  return GroupElement::from_prefix(GroupDomain::NonzeroComplex, 0, std::move(p));
}

}  // namespace testing_support
