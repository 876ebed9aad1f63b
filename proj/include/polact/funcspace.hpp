#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "polact/groups.hpp"
#include "polact/polynomial.hpp"
#include "polact/serialize.hpp"

namespace polact {

// Continuous positive function on (0, inf): polynomial pieces between
// breakpoints 0 < b_0 < ... < b_m, identically 1 on (0, b_0] and [b_m, inf).
// No breakpoints means the constant 1.
class PiecewiseFn {
 public:
  PiecewiseFn() = default;
  // Validates continuity, positivity and the unit outer values.
  PiecewiseFn(std::vector<Rational> breakpoints, std::vector<Polynomial> pieces);

  const std::vector<Rational>& breakpoints() const { return bp_; }
  const std::vector<Polynomial>& pieces() const { return pieces_; }
  bool is_one() const { return bp_.empty(); }

  Rational operator()(const Rational& x) const;
  double eval(double x) const;
  // The polynomial that agrees with f on [l, h]; the interval must not
  // straddle a breakpoint.
  Polynomial piece_on(const Rational& l, const Rational& h) const;
  // Drops breakpoints between identical pieces and constant-1 outer pieces.
  PiecewiseFn simplified() const;
  // Max degree over pieces (0 for the constant 1).
  int degree() const;

  friend bool operator==(const PiecewiseFn& a, const PiecewiseFn& b);

 private:
  std::vector<Rational> bp_;
  std::vector<Polynomial> pieces_;
};

// num/den on each piece, both positive; 1 outside. Used for reciprocals.
struct RationalPiece {
  Polynomial num;
  Polynomial den;
};

class PiecewiseRationalFn {
 public:
  PiecewiseRationalFn() = default;
  PiecewiseRationalFn(const PiecewiseFn& f);  // NOLINT: polynomial pieces are rational pieces
  PiecewiseRationalFn(std::vector<Rational> breakpoints, std::vector<RationalPiece> pieces);

  const std::vector<Rational>& breakpoints() const { return bp_; }
  const std::vector<RationalPiece>& pieces() const { return pieces_; }
  Rational operator()(const Rational& x) const;
  RationalPiece piece_on(const Rational& l, const Rational& h) const;

 private:
  std::vector<Rational> bp_;
  std::vector<RationalPiece> pieces_;
};

PiecewiseFn fgroup_mul(const PiecewiseFn& f, const PiecewiseFn& g);
PiecewiseRationalFn fgroup_mul(const PiecewiseRationalFn& f, const PiecewiseRationalFn& g);
PiecewiseRationalFn fgroup_inv(const PiecewiseRationalFn& f);

// sup_{x>0} d(f(x), g(x)) within tol; Undecided past 10^6 bisections.
Enclosure rho_F(const PiecewiseRationalFn& f, const PiecewiseRationalFn& g, const Rational& tol = default_tolerance());
// sup f over (0, inf) within tol.
Enclosure sup_fn(const PiecewiseFn& f, const Rational& tol = default_tolerance());

// f_g: 1 on (0, 1/2], 2(g(1) - 1)(x - 1) + g(1) on [1/2, 1],
// (g(n+1) - g(n))(x - n) + g(n) on [n, n+1]. g must be in G*.
PiecewiseFn embed_group(const GroupElement& g);

// g_x: 1 on (0, 1), x(n) on [n, n+1). x is a positive summable base-1 sequence.
class StepFn {
 public:
  explicit StepFn(TailedSeq x);
  const TailedSeq& seq() const { return x_; }
  Rational operator()(const Rational& t) const;
  double eval(double t) const;
  Rational norm() const;  // 1 + ||x||_1

 private:
  TailedSeq x_;
};
StepFn embed_point(const TailedSeq& x);

// Element of L1 written as polynomial pieces on 0 = c_0 < ... < c_k = M
// (M an integer) followed by a step tail: value tail(n) on [n, n+1), n >= M.
class L1Fn {
 public:
  L1Fn(std::vector<Rational> cuts, std::vector<Polynomial> pieces, TailedSeq tail);
  static L1Fn from_step(const StepFn& s);

  const std::vector<Rational>& cuts() const { return cuts_; }
  const std::vector<Polynomial>& pieces() const { return pieces_; }
  const TailedSeq& tail() const { return tail_; }
  Index tail_from() const { return tail_.base(); }

  Rational operator()(const Rational& t) const;
  // Moves tail values into pieces up to integer M.
  L1Fn extended_to(Index M) const;
  // Splits pieces at the given extra cuts inside (0, tail_from).
  L1Fn refined(const std::vector<Rational>& extra) const;
  // Exact integral; the function is positive.
  Rational norm() const;

  friend bool operator==(const L1Fn& a, const L1Fn& b);

 private:
  std::vector<Rational> cuts_;
  std::vector<Polynomial> pieces_;
  TailedSeq tail_;
};

// (f . g)(x) = f(x) g(x)
L1Fn act_L1(const PiecewiseFn& f, const L1Fn& g);

struct ActL1Report {
  L1Fn product;
  Rational norm;       // ||f g||_1
  Rational g_norm;     // ||g||_1
  Enclosure sup_f;
  bool bound_holds;    // ||f g||_1 <= sup f ||g||_1
};
ActL1Report act_L1_checked(const PiecewiseFn& f, const StepFn& g);

struct GapReport {
  Polynomial fg, fh, fgh;  // the three pieces on [1/2, 1]
  Polynomial gap;          // fg fh - fgh
  Polynomial identity;     // 2 (x - 1)(2x - 1)(g(1) - 1)(h(1) - 1)
  bool identity_holds;
  Rational extremum_x;
  Rational extremum_value;
  std::string extremum_kind;  // "minimum" or "maximum"
};
// Requires g(1) != 1 and h(1) != 1.
GapReport counterexample_gap(const GroupElement& g, const GroupElement& h);

struct EmbedBoundRow {
  Rational lhs;  // sup |f_{g_k} - f_g|
  Rational rhs;  // 2 rho*(g_k, g)
  bool holds;
};
std::vector<EmbedBoundRow> embed_continuity_bound(const std::vector<GroupElement>& gk, const GroupElement& g);
// sup |f - g| for piecewise-affine f, g (attained at breakpoints).
Rational sup_abs_diff_affine(const PiecewiseFn& f, const PiecewiseFn& g);

// Member of C_N built from P: P on [1/N, N], linear ramps to 1 on
// [1/(2N), 1/N] and [N, N + 1/N], 1 elsewhere.
PiecewiseFn dense_class_member(std::uint64_t N, const Polynomial& P);
// Random degree <= 4 polynomial from a seeded rational grid, resampled until
// positive on [1/N, N].
PiecewiseFn dense_class_sample(std::uint64_t N, std::uint64_t seed);
Polynomial dense_class_polynomial(std::uint64_t N, std::uint64_t seed);

Json to_json(const Polynomial& p);
Json to_json(const PiecewiseFn& f);
PiecewiseFn piecewise_from_json(const Json& j);
Json to_json(const StepFn& s);

}  // namespace polact
