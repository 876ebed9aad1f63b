#pragma once

#include <vector>

#include "polact/enclosure.hpp"
#include "polact/tailed_seq.hpp"

namespace polact {

// Entrywise algebra. Operands are aligned to a common tail start first.
TailedSeq pointwise_mul(const TailedSeq& a, const TailedSeq& b);
// Geometric tails invert to ReciprocalGeometric views, which are valid
// sequences but not l1 points.
TailedSeq pointwise_inv(const TailedSeq& a);
TailedSeq pointwise_div(const TailedSeq& a, const TailedSeq& b);
TailedSeq scaled(const Scalar& s, const TailedSeq& x);
TailedSeq reindex(const TailedSeq& x, Index new_base);

// Throws Domain unless x has a summable tail.
void require_l1(const TailedSeq& x, const char* what = "sequence");

// Exact signed sum of x(n) over n >= from; x must be summable.
Scalar sum_from(const TailedSeq& x, Index from);

// sum |x(n)|, exact for real and float data, certified for complex.
Enclosure l1_norm(const TailedSeq& x, const Rational& tol = default_tolerance());

// sum |x(n) - y(n)|. Exact for real data with any pair of geometric tails;
// complex data gets an enclosure of width <= tol.
Enclosure l1_dist(const TailedSeq& x, const TailedSeq& y, const Rational& tol = default_tolerance());
// The same sum restricted to n >= from.
Enclosure l1_dist_from(const TailedSeq& x, const TailedSeq& y, Index from,
                       const Rational& tol = default_tolerance());

// d(x, y) = |x - y| + |1/x - 1/y| on nonzero scalars.
Enclosure cstar_dist(const Scalar& x, const Scalar& y, const Rational& tol = default_tolerance());

// Squared moduli of the two terms of d(x, y); comparing these decides
// equalities of d exactly, even for complex data.
struct CstarTerms {
  Rational diff2;
  Rational inv_diff2;
};
CstarTerms cstar_terms(const Scalar& x, const Scalar& y);

// sup_n d(a(n), b(n)) for sequences with Constant tails.
Enclosure rho_sup(const TailedSeq& a, const TailedSeq& b, const Rational& tol = default_tolerance());

enum class GroupDomain { PositiveReal, NonzeroComplex };

// Element of G, G* (PositiveReal) or H (NonzeroComplex): nonzero entries and
// a Constant(1) tail.
class GroupElement {
 public:
  GroupElement(TailedSeq seq, GroupDomain domain);

  static GroupElement identity(GroupDomain domain, Index base, ScalarMode mode = ScalarMode::ExactReal);
  static GroupElement from_prefix(GroupDomain domain, Index base, std::vector<Scalar> prefix);

  const TailedSeq& seq() const { return seq_; }
  GroupDomain domain() const { return domain_; }
  Index base() const { return seq_.base(); }
  ScalarMode mode() const { return seq_.mode(); }
  Scalar at(Index n) const { return seq_.entry(n); }

  friend bool operator==(const GroupElement& a, const GroupElement& b) {
    return a.domain_ == b.domain_ && a.seq_ == b.seq_;
  }

 private:
  TailedSeq seq_;
  GroupDomain domain_;
};

Enclosure rho_sup(const GroupElement& g, const GroupElement& h, const Rational& tol = default_tolerance());

// max(sup |g(n)|^2, sup 1/|g(n)|^2), exact in every mode; the square of the
// translation factor max{sup|g|, sup 1/|g|}.
Rational translation_factor2(const GroupElement& g);
// sup_n |g(n)|^2 including the tail value 1.
Rational sup_abs2(const GroupElement& g);
Enclosure sup_abs(const GroupElement& g, const Rational& tol = default_tolerance());

}  // namespace polact
