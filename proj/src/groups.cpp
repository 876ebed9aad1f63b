#include "polact/groups.hpp"

#include "polact/error.hpp"

namespace polact {

namespace {

void require_member(const GroupCtx& ctx, const GroupElement& g) {
  require(ctx.contains(g), ErrorCode::InvalidArgument, "element does not belong to " + ctx.name());
}

// n/D with ties resolved toward 1.
Rational round_toward_one(const Rational& v, const Integer& den) {
  Rational t = v * Rational(den);
  Integer lo = floor(t);
  Rational frac = t - Rational(lo);
  Rational half(1, 2);
  Rational a(lo, den), b(Integer(lo + 1), den);
  a.canonicalize();
  b.canonicalize();
  if (frac < half) return a;
  if (frac > half) return b;
  return abs(a - 1) <= abs(b - 1) ? a : b;
}

}  // namespace

std::string GroupCtx::name() const {
  if (domain == GroupDomain::NonzeroComplex) return base == 0 ? "H" : "H(base " + std::to_string(base) + ")";
  return base == 0 ? "G" : (base == 1 ? "G*" : "G(base " + std::to_string(base) + ")");
}

GroupElement group_identity(const GroupCtx& ctx, ScalarMode mode) {
  return GroupElement::identity(ctx.domain, ctx.base, mode);
}

GroupElement group_mul(const GroupCtx& ctx, const GroupElement& g, const GroupElement& h) {
  require_member(ctx, g);
  require_member(ctx, h);
  return GroupElement(pointwise_mul(g.seq(), h.seq()), ctx.domain);
}

GroupElement group_inv(const GroupCtx& ctx, const GroupElement& g) {
  require_member(ctx, g);
  return GroupElement(pointwise_inv(g.seq()), ctx.domain);
}

GroupElement embed_in_h(const GroupElement& g) {
  return GroupElement(g.seq().to_mode(ScalarMode::ExactComplex), GroupDomain::NonzeroComplex);
}

bool in_dense_class(const GroupElement& g) { return g.mode() != ScalarMode::Float; }

GroupElement dense_approx(const GroupCtx& ctx, const GroupElement& h, const Rational& eps) {
  require_member(ctx, h);
  require(eps > 0, ErrorCode::InvalidArgument, "dense_approx needs eps > 0");
  if (in_dense_class(h)) return GroupElement(h.seq().trimmed(), ctx.domain);

  Integer base_den = ceil(Rational(2 / eps));
  std::vector<Scalar> prefix;
  for (const auto& s : h.seq().prefix()) {
    Rational v = s.exact_real();
    Integer den = base_den;
    for (;;) {
      Rational r = round_toward_one(v, den);
      bool ok = ctx.domain == GroupDomain::PositiveReal ? r > 0 : r != 0;
      if (ok && cstar_dist(Scalar(r), Scalar(v)).value() < eps) {
        prefix.push_back(Scalar(r));
        break;
      }
      den *= 2;
    }
  }
  GroupElement out(TailedSeq::constant(h.base(), std::move(prefix), Scalar(Rational(1))).trimmed(), ctx.domain);
  GroupElement exact_h(h.seq().to_mode(ScalarMode::ExactReal), ctx.domain);
  require(rho_sup(out, exact_h).value() < eps, ErrorCode::Invariant, "dense_approx missed its tolerance");
  return out;
}

InequalityVerdict verify_translation_bound(const GroupCtx& ctx, const GroupElement& f, const GroupElement& g,
                                           const GroupElement& h, const Rational& tol) {
  require_member(ctx, f);
  require_member(ctx, g);
  require_member(ctx, h);

  auto fh = pointwise_mul(f.seq(), h.seq());
  auto gh = pointwise_mul(g.seq(), h.seq());
  Rational factor2 = translation_factor2(h);

  InequalityVerdict v;
  Rational t = tol;
  for (int attempt = 0; attempt < 3; ++attempt) {
    v.lhs = rho_sup(fh, gh, t);
    v.rhs = sqrt_enclosure(factor2, t) * rho_sup(f, g, t);
    if (v.lhs.is_exact() && v.rhs.is_exact()) {
      v.holds = v.lhs.lo <= v.rhs.lo;
      v.method = "exact";
      return v;
    }
    if (certainly_le(v.lhs, v.rhs)) {
      v.holds = true;
      v.method = "enclosure";
      return v;
    }
    if (certainly_gt(v.lhs, v.rhs)) {
      v.holds = false;
      v.method = "enclosure";
      return v;
    }
    t /= 1000000;
  }

  // Overlapping enclosures (typically LHS == RHS). Each coordinate's term
  // |h| |f - g| + |1/h| |1/f - 1/g| is at most F (|f - g| + |1/f - 1/g|) when
  // |h(n)|^2 <= F^2 and |h(n)|^-2 <= F^2, both exact rational checks.
  auto [fa, ga] = aligned(f.seq(), g.seq());
  auto ha = h.seq().extended_to(fa.tail_start());
  fa = fa.extended_to(ha.tail_start());
  ga = ga.extended_to(ha.tail_start());
  for (Index n = fa.base(); n < fa.tail_start(); ++n) {
    Rational m = ha.entry(n).abs2();
    if (m > factor2 || 1 / m > factor2) {
      fail(ErrorCode::Undecided, "translation bound undecidable at the requested tolerance");
    }
  }
  v.holds = true;
  v.method = "termwise";
  return v;
}

}  // namespace polact
