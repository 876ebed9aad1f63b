#pragma once

#include <optional>
#include <string>

#include "polact/groups.hpp"

namespace polact {

enum class SpaceTag { P, L1Cstar, Pstar };
const char* space_name(SpaceTag s);

// Compatible pairs only: (G, P), (H, L1Cstar), (G*, Pstar).
struct ActionCtx {
  GroupCtx group;
  SpaceTag space;

  static ActionCtx G_on_P() { return {GroupCtx::G(), SpaceTag::P}; }
  static ActionCtx H_on_L1() { return {GroupCtx::H(), SpaceTag::L1Cstar}; }
  static ActionCtx Gstar_on_Pstar() { return {GroupCtx::Gstar(), SpaceTag::Pstar}; }

  void validate() const;
  bool contains(const TailedSeq& x) const;
  void require_point(const TailedSeq& x, const char* what = "point") const;
};

// (g . x)(n) = g(n) x(n)
TailedSeq act(const ActionCtx& ctx, const GroupElement& g, const TailedSeq& x);

// The h with h . x = y, if one exists among representable elements: the
// quotient y/x must have the tail Constant(1).
std::optional<GroupElement> orbit_member(const ActionCtx& ctx, const TailedSeq& y, const TailedSeq& x);

struct DensityWitness {
  GroupElement h;      // y/x up to N, then 1
  Enclosure residual;  // sum over n > N of |x(n) - y(n)|
};
DensityWitness density_witness(const ActionCtx& ctx, const TailedSeq& x, const TailedSeq& y, Index N,
                               const Rational& tol = default_tolerance());

struct MeagerSetParams {
  TailedSeq center;
  Rational ratio_bound{3, 2};
  Index m = 0;

  // Throws Invariant unless ratio_bound > 1, and InvalidArgument unless the
  // center is a nonvanishing summable sequence.
  void validate() const;
};

struct MeagerVerdict {
  bool member = false;
  std::optional<Index> least_m;  // least m with |y(n)/x(n)| <= bound for all n >= m
  bool in_piece = false;         // member of the closed piece for params.m
  std::string reason;
};
MeagerVerdict meager_member(const MeagerSetParams& params, const TailedSeq& y);

struct EscapeWitness {
  TailedSeq z_n;
  Enclosure residual;  // ||z_N - z||_1
  MeagerVerdict verdict;
};
// z_N agrees with z up to N and equals c x afterwards, c = 2 when the bound is
// below 2 and c = 2 * bound otherwise.
EscapeWitness meager_escape(const MeagerSetParams& params, const TailedSeq& z, Index N,
                            const Rational& tol = default_tolerance());
Rational escape_factor(const Rational& ratio_bound);

// The sequence equal to z for n <= N and to w for n > N.
TailedSeq splice(const TailedSeq& z, Index N, const TailedSeq& w);

// ||h_k x_k - h x||_1 <= (rho(h_k, h) + sup|h|) ||x_k - x||_1 + rho(h_k, h) ||x||_1
struct ContinuityVerdict {
  Enclosure lhs;
  Enclosure rhs;
  bool holds = false;
  std::string method;
};
ContinuityVerdict check_joint_continuity(const ActionCtx& ctx, const GroupElement& hk, const TailedSeq& xk,
                                         const GroupElement& h, const TailedSeq& x,
                                         const Rational& tol = default_tolerance());

}  // namespace polact
