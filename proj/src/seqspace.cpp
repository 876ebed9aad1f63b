#include "polact/seqspace.hpp"

#include <algorithm>

#include "polact/error.hpp"

namespace polact {

namespace {

// Upper bound on |q| strictly below 1, from a tightening enclosure.
Enclosure modulus_below_one(const Scalar& q, const Rational& tol) {
  Rational t = tol;
  for (int i = 0; i < 64; ++i) {
    Enclosure m = q.abs(t);
    if (m.hi < 1) return m;
    t /= 1024;
  }
  fail(ErrorCode::Undecided, "cannot separate |ratio| from 1");
}

// 1 / (1 - m) for an enclosure m inside [0, 1).
Enclosure geometric_factor(const Enclosure& m) {
  return {Rational(1 / (1 - m.lo)), Rational(1 / (1 - m.hi))};
}

// Exact sum over k >= 0 of |c1 q1^k - c2 q2^k| for real data with |q1|, |q2| < 1.
Rational real_tail_abs_diff(const Rational& c1, const Rational& q1, const Rational& c2, const Rational& q2) {
  if (c1 == c2 && q1 == q2) return 0;
  if (q1 == q2) return Rational(abs(c1 - c2) / (1 - abs(q1)));
  if (q1 == -q2) return Rational((abs(c1 - c2) + abs(q1) * abs(c1 + c2)) / (1 - q1 * q1));
  if (abs(q1) < abs(q2)) return real_tail_abs_diff(c2, q2, c1, q1);

  // Now |q1| > |q2|: from some K on, the first tail dominates in modulus and
  // fixes the sign of the difference.
  Rational total = 0;
  Rational t1 = c1, t2 = c2;
  unsigned long k = 0;
  while (abs(t2) > abs(t1)) {
    total += abs(t1 - t2);
    t1 *= q1;
    t2 *= q2;
    ++k;
  }
  int s1 = sign(c1);
  Rational q2s = sign(q1) < 0 ? Rational(-q2) : q2;
  // t2 = c2 q2^k, and (sgn(q1) q2)^k = sgn(q1)^k q2^k.
  Rational signed_t2 = (sign(q1) < 0 && (k % 2 == 1)) ? Rational(-t2) : t2;
  total += abs(t1) / (1 - abs(q1));
  total -= s1 * signed_t2 / (1 - q2s);
  return total;
}

Enclosure complex_tail_abs_diff(const TailModel& a, const TailModel& b, const Rational& tol) {
  const Scalar& c1 = a.coef();
  const Scalar& q1 = a.ratio();
  const Scalar& c2 = b.coef();
  const Scalar& q2 = b.ratio();
  if (identical(c1, c2) && identical(q1, q2)) return Enclosure::exact(0);
  if (identical(q1, q2)) {
    Enclosure m = modulus_below_one(q1, tol / 4);
    Enclosure d = (c1 - c2).abs(tol / 4);
    Enclosure out = d * geometric_factor(m);
    // Tighten until the width target is met.
    Rational t = tol / 4;
    while (out.width() > tol) {
      t /= 16;
      m = modulus_below_one(q1, t);
      d = (c1 - c2).abs(t);
      out = d * geometric_factor(m);
    }
    return out;
  }

  // Direct summation with a geometric remainder bound.
  Enclosure m1 = modulus_below_one(q1, tol / 8);
  Enclosure m2 = modulus_below_one(q2, tol / 8);
  Rational a1 = c1.abs(tol / 8).hi, a2 = c2.abs(tol / 8).hi;
  Enclosure acc = Enclosure::exact(0);
  Scalar t1 = c1, t2 = c2;
  Rational r1 = a1, r2 = a2;  // upper bounds on |c_i| |q_i|^k
  Rational term_tol = tol / 1024;
  for (unsigned long k = 0;; ++k) {
    Rational remainder = r1 / (1 - m1.hi) + r2 / (1 - m2.hi);
    if (remainder + acc.width() <= tol || k > 100000) {
      require(remainder + acc.width() <= tol, ErrorCode::Undecided, "tail difference did not converge");
      return acc + Enclosure(Rational(0), remainder);
    }
    acc = acc + (t1 - t2).abs(term_tol);
    term_tol /= 2;
    t1 = t1 * q1;
    t2 = t2 * q2;
    r1 *= m1.hi;
    r2 *= m2.hi;
  }
}

Enclosure tail_abs_diff(const TailModel& a, const TailModel& b, const Rational& tol) {
  if (a.mode() == ScalarMode::ExactComplex) return complex_tail_abs_diff(a, b, tol);
  return Enclosure::exact(real_tail_abs_diff(a.coef().exact_real(), a.ratio().exact_real(),
                                             b.coef().exact_real(), b.ratio().exact_real()));
}

}  // namespace

TailedSeq pointwise_mul(const TailedSeq& a, const TailedSeq& b) {
  auto [x, y] = aligned(a, b);
  std::vector<Scalar> p;
  p.reserve(x.prefix().size());
  for (size_t i = 0; i < x.prefix().size(); ++i) p.push_back(x.prefix()[i] * y.prefix()[i]);
  return TailedSeq(x.base(), std::move(p), x.tail().mul(y.tail()));
}

TailedSeq pointwise_inv(const TailedSeq& a) {
  std::vector<Scalar> p;
  p.reserve(a.prefix().size());
  for (const auto& s : a.prefix()) p.push_back(s.inverse());
  return TailedSeq(a.base(), std::move(p), a.tail().inv());
}

TailedSeq pointwise_div(const TailedSeq& a, const TailedSeq& b) { return pointwise_mul(a, pointwise_inv(b)); }

TailedSeq scaled(const Scalar& s, const TailedSeq& x) {
  require(!s.is_zero(), ErrorCode::Domain, "scaling by zero leaves the represented class");
  std::vector<Scalar> p;
  p.reserve(x.prefix().size());
  for (const auto& e : x.prefix()) p.push_back(s * e);
  return TailedSeq(x.base(), std::move(p), TailModel::power(s * x.tail().coef(), x.tail().ratio(), x.tail_start()));
}

TailedSeq reindex(const TailedSeq& x, Index new_base) {
  return TailedSeq(new_base, x.prefix(), x.tail().relabelled(new_base + x.prefix().size()));
}

void require_l1(const TailedSeq& x, const char* what) {
  if (!x.summable()) {
    fail(ErrorCode::Domain, std::string(what) + " is not an l1 point (tail kind " +
                                std::string(tail_kind_name(x.tail().kind())) + ")");
  }
}

Scalar sum_from(const TailedSeq& x, Index from) {
  require_l1(x);
  Index start = std::max(from, x.base());
  Scalar total = x.tail().coef().one_like() - x.tail().coef().one_like();
  for (Index n = start; n < x.tail_start(); ++n) total = total + x.entry(n);
  TailModel t = x.tail().advanced_to(std::max(start, x.tail_start()));
  Scalar one = t.ratio().one_like();
  return total + t.coef() / (one - t.ratio());
}

Enclosure l1_norm(const TailedSeq& x, const Rational& tol) {
  require_l1(x);
  if (x.mode() != ScalarMode::ExactComplex) {
    Rational total = 0;
    for (const auto& s : x.prefix()) total += abs(s.exact_real());
    total += abs(x.tail().coef().exact_real()) / (1 - abs(x.tail().ratio().exact_real()));
    return Enclosure::exact(total);
  }
  Rational t = tol / (2 * (x.prefix().size() + 2));
  for (;;) {
    Enclosure acc = Enclosure::exact(0);
    for (const auto& s : x.prefix()) acc = acc + s.abs(t);
    Enclosure m = modulus_below_one(x.tail().ratio(), t);
    acc = acc + x.tail().coef().abs(t) * geometric_factor(m);
    if (acc.width() <= tol) return acc;
    t /= 16;
  }
}

Enclosure l1_dist_from(const TailedSeq& x, const TailedSeq& y, Index from, const Rational& tol) {
  require_l1(x, "first operand");
  require_l1(y, "second operand");
  auto [a, b] = aligned(x, y);
  Index start = std::max(a.tail_start(), from);
  a = a.extended_to(start);
  b = b.extended_to(start);
  Index first = std::max(from, a.base());
  Index count = start > first ? start - first : 0;
  Rational t = tol / (2 * (count + 1));
  for (;;) {
    Enclosure acc = Enclosure::exact(0);
    for (Index n = first; n < start; ++n) acc = acc + (a.entry(n) - b.entry(n)).abs(t);
    acc = acc + tail_abs_diff(a.tail(), b.tail(), tol / 2);
    if (acc.width() <= tol) return acc;
    t /= 16;
  }
}

Enclosure l1_dist(const TailedSeq& x, const TailedSeq& y, const Rational& tol) {
  return l1_dist_from(x, y, x.base(), tol);
}

Enclosure cstar_dist(const Scalar& x, const Scalar& y, const Rational& tol) {
  require(!x.is_zero() && !y.is_zero(), ErrorCode::Domain, "d(x, y) requires nonzero arguments");
  if (x.mode() != y.mode()) {
    fail(ErrorCode::ModeMismatch, "d(x, y) on scalars of different modes");
  }
  return (x - y).abs(tol / 2) + (x.inverse() - y.inverse()).abs(tol / 2);
}

CstarTerms cstar_terms(const Scalar& x, const Scalar& y) {
  require(!x.is_zero() && !y.is_zero(), ErrorCode::Domain, "d(x, y) requires nonzero arguments");
  return {(x - y).abs2(), (x.inverse() - y.inverse()).abs2()};
}

Enclosure rho_sup(const TailedSeq& a, const TailedSeq& b, const Rational& tol) {
  require(a.tail().kind() == TailKind::Constant && b.tail().kind() == TailKind::Constant,
          ErrorCode::Domain, "rho_sup needs eventually constant sequences");
  auto [x, y] = aligned(a, b);
  Enclosure best = cstar_dist(x.tail().coef(), y.tail().coef(), tol);
  for (size_t i = 0; i < x.prefix().size(); ++i) best = max(best, cstar_dist(x.prefix()[i], y.prefix()[i], tol));
  return best;
}

GroupElement::GroupElement(TailedSeq seq, GroupDomain domain) : seq_(std::move(seq)), domain_(domain) {
  const TailModel& t = seq_.tail();
  require(t.kind() == TailKind::Constant && t.coef().is_one(), ErrorCode::Domain,
          "group element must have a Constant(1) tail");
  require(seq_.nonvanishing(), ErrorCode::Domain, "group element entries must be nonzero");
  if (domain_ == GroupDomain::PositiveReal) {
    require(seq_.positive(), ErrorCode::Domain, "positive-real group element has a non-positive entry");
  }
}

GroupElement GroupElement::identity(GroupDomain domain, Index base, ScalarMode mode) {
  Scalar one = Scalar(Rational(1)).to_mode(mode);
  return GroupElement(TailedSeq::constant(base, {}, one), domain);
}

GroupElement GroupElement::from_prefix(GroupDomain domain, Index base, std::vector<Scalar> prefix) {
  ScalarMode mode = prefix.empty() ? ScalarMode::ExactReal : prefix.front().mode();
  Scalar one = Scalar(Rational(1)).to_mode(mode);
  return GroupElement(TailedSeq::constant(base, std::move(prefix), one), domain);
}

Enclosure rho_sup(const GroupElement& g, const GroupElement& h, const Rational& tol) {
  return rho_sup(g.seq(), h.seq(), tol);
}

Rational sup_abs2(const GroupElement& g) {
  Rational best = 1;
  for (const auto& s : g.seq().prefix()) best = std::max(best, s.abs2());
  return best;
}

Rational translation_factor2(const GroupElement& g) {
  Rational best = 1;
  for (const auto& s : g.seq().prefix()) {
    Rational m = s.abs2();
    best = std::max({best, m, Rational(1 / m)});
  }
  return best;
}

Enclosure sup_abs(const GroupElement& g, const Rational& tol) { return sqrt_enclosure(sup_abs2(g), tol); }

}  // namespace polact
