#pragma once

#include <string>
#include <vector>

#include "polact/enclosure.hpp"

namespace polact {

// Polynomial with rational coefficients, stored low degree first.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coeffs);
  static Polynomial constant(const Rational& c) { return Polynomial({c}); }
  // a + b x
  static Polynomial linear(const Rational& a, const Rational& b) { return Polynomial({a, b}); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(size_t k) const { return k < c_.size() ? c_[k] : Rational(0); }

  Rational operator()(const Rational& x) const;
  double eval(double x) const;

  Polynomial derivative() const;
  Polynomial antiderivative() const;
  Rational integrate(const Rational& a, const Rational& b) const;
  // p(x + c)
  Polynomial shifted(const Rational& c) const;

  // Range enclosure on [a, b] from the Taylor form at the midpoint; exact
  // for degree <= 1.
  Enclosure range(const Rational& a, const Rational& b) const;
  // Number of distinct real roots in (a, b].
  int count_roots(const Rational& a, const Rational& b) const;
  // p > 0 on the closed interval [a, b].
  bool positive_on(const Rational& a, const Rational& b) const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a);
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

  // Quotient and remainder.
  std::pair<Polynomial, Polynomial> divmod(const Polynomial& d) const;

  std::string to_string() const;  // e.g. "4*x^2 - 6*x + 2"

 private:
  void trim();
  std::vector<Rational> c_;
};

// Enclosure of sup A/B over [a, b] (B > 0 there) within tol: endpoints and
// critical points, the latter isolated by Sturm sequences. `budget` counts
// bisections and is decremented; Undecided is thrown when it runs out.
Enclosure sup_ratio(const Polynomial& A, const Polynomial& B, const Rational& a, const Rational& b,
                    const Rational& tol, long& budget);

}  // namespace polact
