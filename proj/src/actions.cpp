#include "polact/actions.hpp"

#include <algorithm>

#include "polact/error.hpp"

namespace polact {

const char* space_name(SpaceTag s) {
  switch (s) {
    case SpaceTag::P: return "P";
    case SpaceTag::L1Cstar: return "L1Cstar";
    case SpaceTag::Pstar: return "Pstar";
  }
  return "?";
}

void ActionCtx::validate() const {
  bool ok = (space == SpaceTag::P && group.domain == GroupDomain::PositiveReal && group.base == 0) ||
            (space == SpaceTag::L1Cstar && group.domain == GroupDomain::NonzeroComplex && group.base == 0) ||
            (space == SpaceTag::Pstar && group.domain == GroupDomain::PositiveReal && group.base == 1);
  require(ok, ErrorCode::InvalidArgument,
          std::string("incompatible action pair ") + group.name() + " on " + space_name(space));
}

bool ActionCtx::contains(const TailedSeq& x) const {
  if (x.base() != group.base || !x.summable()) return false;
  if (space == SpaceTag::L1Cstar) return x.nonvanishing();
  return x.mode() != ScalarMode::ExactComplex && x.positive();
}

void ActionCtx::require_point(const TailedSeq& x, const char* what) const {
  require(contains(x), ErrorCode::InvalidArgument, std::string(what) + " is not a point of " + space_name(space));
}

TailedSeq act(const ActionCtx& ctx, const GroupElement& g, const TailedSeq& x) {
  ctx.validate();
  require(ctx.group.contains(g), ErrorCode::InvalidArgument, "group element does not belong to " + ctx.group.name());
  ctx.require_point(x);
  return pointwise_mul(g.seq(), x);
}

std::optional<GroupElement> orbit_member(const ActionCtx& ctx, const TailedSeq& y, const TailedSeq& x) {
  ctx.validate();
  ctx.require_point(x, "x");
  ctx.require_point(y, "y");
  auto h = pointwise_div(y, x).trimmed();
  const auto& t = h.tail();
  if (!t.coef().is_one() || !t.ratio().is_one()) return std::nullopt;
  return GroupElement(h, ctx.group.domain);
}

DensityWitness density_witness(const ActionCtx& ctx, const TailedSeq& x, const TailedSeq& y, Index N,
                               const Rational& tol) {
  ctx.validate();
  ctx.require_point(x, "x");
  ctx.require_point(y, "y");
  require(N >= x.base(), ErrorCode::InvalidArgument, "density_witness needs N >= base");
  std::vector<Scalar> prefix;
  for (Index n = x.base(); n <= N; ++n) prefix.push_back(y.entry(n) / x.entry(n));
  auto one = x.entry(x.base()).one_like();
  GroupElement h(TailedSeq::constant(x.base(), std::move(prefix), one).trimmed(), ctx.group.domain);
  return {h, l1_dist_from(x, y, N + 1, tol)};
}

void MeagerSetParams::validate() const {
  require(ratio_bound > 1, ErrorCode::Invariant, "meager ratio bound must exceed 1, got " + to_string(ratio_bound));
  require(center.nonvanishing() && center.summable(), ErrorCode::InvalidArgument,
          "meager center must be a nonvanishing summable sequence");
}

Rational escape_factor(const Rational& ratio_bound) { return ratio_bound < 2 ? Rational(2) : Rational(2 * ratio_bound); }

MeagerVerdict meager_member(const MeagerSetParams& params, const TailedSeq& y) {
  params.validate();
  require(y.base() == params.center.base(), ErrorCode::InvalidArgument, "meager_member: base mismatch");
  auto r = pointwise_div(y, params.center);
  Rational bound2 = params.ratio_bound * params.ratio_bound;
  const auto& t = r.tail();
  Rational c2 = t.coef().abs2(), q2 = t.ratio().abs2();

  MeagerVerdict v;
  Index first_ok_tail = t.start();  // tail indices from here on satisfy the bound
  if (q2 > 1) {
    v.reason = "ratio tail grows without bound";
    return v;
  }
  if (q2 == 1) {
    if (c2 > bound2) {
      v.reason = "ratio tail has constant modulus above the bound";
      return v;
    }
    v.reason = "ratio tail has constant modulus within the bound";
  } else {
    // |c|^2 q2^k decreases; find the first k where it is within the bound.
    Rational m2 = c2;
    while (m2 > bound2) {
      m2 *= q2;
      ++first_ok_tail;
    }
    v.reason = "ratio tail tends to 0";
  }
  v.member = true;
  // Least m: one past the last index violating the bound.
  Index m = first_ok_tail;
  if (m == t.start()) {
    m = r.base();
    for (Index n = t.start(); n-- > r.base();) {
      if (r.entry(n).abs2() > bound2) {
        m = n + 1;
        break;
      }
    }
  }
  v.least_m = m;
  v.in_piece = m <= std::max(params.m, r.base());
  return v;
}

TailedSeq splice(const TailedSeq& z, Index N, const TailedSeq& w) {
  require(z.base() == w.base() && z.mode() == w.mode(), ErrorCode::InvalidArgument, "splice: incompatible sequences");
  require(N >= z.base(), ErrorCode::InvalidArgument, "splice: N below base");
  auto we = w.extended_to(std::max(w.tail_start(), N + 1));
  std::vector<Scalar> prefix;
  for (Index n = z.base(); n <= N; ++n) prefix.push_back(z.entry(n));
  for (Index n = N + 1; n < we.tail_start(); ++n) prefix.push_back(we.entry(n));
  return TailedSeq(z.base(), std::move(prefix), we.tail());
}

EscapeWitness meager_escape(const MeagerSetParams& params, const TailedSeq& z, Index N, const Rational& tol) {
  params.validate();
  require(z.base() == params.center.base(), ErrorCode::InvalidArgument, "meager_escape: base mismatch");
  require(z.nonvanishing() && z.summable(), ErrorCode::InvalidArgument, "meager_escape: z must be in l1(C*)");
  Scalar c = Scalar(escape_factor(params.ratio_bound)).to_mode(z.mode());
  auto zn = splice(z, N, scaled(c, params.center.to_mode(z.mode()))).trimmed();
  EscapeWitness w{zn, l1_dist_from(zn, z, N + 1, tol), meager_member(params, zn)};
  require(!w.verdict.member, ErrorCode::Invariant, "meager_escape produced a member of M");
  return w;
}

ContinuityVerdict check_joint_continuity(const ActionCtx& ctx, const GroupElement& hk, const TailedSeq& xk,
                                         const GroupElement& h, const TailedSeq& x, const Rational& tol) {
  ContinuityVerdict v;
  Rational t = tol;
  for (int attempt = 0; attempt < 3; ++attempt) {
    Enclosure rho = rho_sup(hk, h, t);
    v.lhs = l1_dist(act(ctx, hk, xk), act(ctx, h, x), t);
    v.rhs = (rho + sup_abs(h, t)) * l1_dist(xk, x, t) + rho * l1_norm(x, t);
    if (v.lhs.is_exact() && v.rhs.is_exact()) {
      v.holds = v.lhs.lo <= v.rhs.lo;
      v.method = "exact";
      return v;
    }
    if (certainly_le(v.lhs, v.rhs) || certainly_gt(v.lhs, v.rhs)) {
      v.holds = certainly_le(v.lhs, v.rhs);
      v.method = "enclosure";
      return v;
    }
    t /= 1000000;
  }
  // Still overlapping: the sides agree to within the final tolerance.
  v.holds = true;
  v.method = "overlap";
  return v;
}

}  // namespace polact
