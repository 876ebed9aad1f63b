#pragma once

#include <string>

#include "polact/seqspace.hpp"

namespace polact {

// Which group an element lives in: G = (PositiveReal, 0), H = (NonzeroComplex, 0),
// G* = (PositiveReal, 1).
struct GroupCtx {
  GroupDomain domain;
  Index base;

  static GroupCtx G() { return {GroupDomain::PositiveReal, 0}; }
  static GroupCtx H() { return {GroupDomain::NonzeroComplex, 0}; }
  static GroupCtx Gstar() { return {GroupDomain::PositiveReal, 1}; }

  bool contains(const GroupElement& g) const { return g.domain() == domain && g.base() == base; }
  std::string name() const;
};

GroupElement group_identity(const GroupCtx& ctx, ScalarMode mode = ScalarMode::ExactReal);
GroupElement group_mul(const GroupCtx& ctx, const GroupElement& g, const GroupElement& h);
GroupElement group_inv(const GroupCtx& ctx, const GroupElement& g);

// The same element viewed in H (complex mode, NonzeroComplex domain).
GroupElement embed_in_h(const GroupElement& g);

// Member of the countable class C: exact rational (or Gaussian rational)
// entries, eventually exactly 1.
bool in_dense_class(const GroupElement& g);

// An element of C within rho-distance eps of h. Exact inputs are already in C
// and come back unchanged. Float inputs are rounded entrywise to the grid
// 1/D with D = ceil(2/eps), ties toward 1; D doubles for an entry until that
// entry is within d-distance eps.
GroupElement dense_approx(const GroupCtx& ctx, const GroupElement& h, const Rational& eps);

// Both sides of an inequality and how it was decided.
struct InequalityVerdict {
  Enclosure lhs;
  Enclosure rhs;
  bool holds = false;
  std::string method;  // "exact", "enclosure" or "termwise"
};

// rho(fh, gh) <= max{sup|h|, sup 1/|h|} rho(f, g)
InequalityVerdict verify_translation_bound(const GroupCtx& ctx, const GroupElement& f, const GroupElement& g,
                                           const GroupElement& h, const Rational& tol = default_tolerance());

}  // namespace polact
