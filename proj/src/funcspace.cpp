#include "polact/funcspace.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "polact/error.hpp"

namespace polact {

namespace {

const Polynomial kOne = Polynomial::constant(1);

// Index i with bp[i] <= l and h <= bp[i+1], or -1 when [l, h] is outside.
long locate(const std::vector<Rational>& bp, const Rational& l, const Rational& h) {
  if (bp.empty() || h <= bp.front() || l >= bp.back()) return -1;
  auto it = std::upper_bound(bp.begin(), bp.end(), l);
  long i = static_cast<long>(it - bp.begin()) - 1;
  require(i >= 0 && h <= bp[i + 1], ErrorCode::InvalidArgument, "interval straddles a breakpoint");
  return i;
}

std::vector<Rational> merged(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  std::vector<Rational> out;
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

PiecewiseFn::PiecewiseFn(std::vector<Rational> breakpoints, std::vector<Polynomial> pieces)
    : bp_(std::move(breakpoints)), pieces_(std::move(pieces)) {
  if (bp_.empty()) {
    require(pieces_.empty(), ErrorCode::InvalidArgument, "pieces without breakpoints");
    return;
  }
  require(bp_.size() >= 2 && pieces_.size() + 1 == bp_.size(), ErrorCode::InvalidArgument,
          "need one piece per breakpoint interval");
  require(bp_.front() > 0, ErrorCode::InvalidArgument, "breakpoints must be positive");
  for (size_t i = 0; i + 1 < bp_.size(); ++i)
    require(bp_[i] < bp_[i + 1], ErrorCode::InvalidArgument, "breakpoints must increase strictly");
  require(pieces_.front()(bp_.front()) == 1, ErrorCode::Invariant, "discontinuous at the first breakpoint");
  require(pieces_.back()(bp_.back()) == 1, ErrorCode::Invariant, "discontinuous at the last breakpoint");
  for (size_t i = 0; i + 1 < pieces_.size(); ++i) {
    require(pieces_[i](bp_[i + 1]) == pieces_[i + 1](bp_[i + 1]), ErrorCode::Invariant,
            "discontinuous at breakpoint " + to_string(bp_[i + 1]));
  }
  for (size_t i = 0; i < pieces_.size(); ++i) {
    require(pieces_[i].positive_on(bp_[i], bp_[i + 1]), ErrorCode::Invariant,
            "not positive on [" + to_string(bp_[i]) + ", " + to_string(bp_[i + 1]) + "]");
  }
}

Rational PiecewiseFn::operator()(const Rational& x) const {
  require(x > 0, ErrorCode::Domain, "functions are defined on (0, inf)");
  long i = locate(bp_, x, x);
  return i < 0 ? Rational(1) : pieces_[i](x);
}

double PiecewiseFn::eval(double x) const {
  if (bp_.empty() || x <= bp_.front().get_d() || x >= bp_.back().get_d()) return 1.0;
  size_t i = 0;
  while (i + 2 < bp_.size() && x >= bp_[i + 1].get_d()) ++i;
  return pieces_[i].eval(x);
}

Polynomial PiecewiseFn::piece_on(const Rational& l, const Rational& h) const {
  long i = locate(bp_, l, h);
  return i < 0 ? kOne : pieces_[i];
}

PiecewiseFn PiecewiseFn::simplified() const {
  std::vector<Rational> bp;
  std::vector<Polynomial> pieces;
  for (size_t i = 0; i < pieces_.size(); ++i) {
    if (pieces.empty()) {
      if (pieces_[i] == kOne) continue;
      bp.push_back(bp_[i]);
    } else if (pieces.back() == pieces_[i]) {
      bp.back() = bp_[i + 1];
      continue;
    }
    pieces.push_back(pieces_[i]);
    bp.push_back(bp_[i + 1]);
  }
  while (!pieces.empty() && pieces.back() == kOne) {
    pieces.pop_back();
    bp.pop_back();
  }
  if (pieces.empty()) return {};
  return PiecewiseFn(std::move(bp), std::move(pieces));
}

int PiecewiseFn::degree() const {
  int d = 0;
  for (const auto& p : pieces_) d = std::max(d, p.degree());
  return d;
}

bool operator==(const PiecewiseFn& a, const PiecewiseFn& b) {
  auto sa = a.simplified(), sb = b.simplified();
  return sa.bp_ == sb.bp_ && sa.pieces_ == sb.pieces_;
}

PiecewiseRationalFn::PiecewiseRationalFn(const PiecewiseFn& f) : bp_(f.breakpoints()) {
  for (const auto& p : f.pieces()) pieces_.push_back({p, kOne});
}

PiecewiseRationalFn::PiecewiseRationalFn(std::vector<Rational> breakpoints, std::vector<RationalPiece> pieces)
    : bp_(std::move(breakpoints)), pieces_(std::move(pieces)) {
  require(bp_.empty() ? pieces_.empty() : pieces_.size() + 1 == bp_.size(), ErrorCode::InvalidArgument,
          "need one piece per breakpoint interval");
}

Rational PiecewiseRationalFn::operator()(const Rational& x) const {
  require(x > 0, ErrorCode::Domain, "functions are defined on (0, inf)");
  long i = locate(bp_, x, x);
  if (i < 0) return 1;
  return pieces_[i].num(x) / pieces_[i].den(x);
}

RationalPiece PiecewiseRationalFn::piece_on(const Rational& l, const Rational& h) const {
  long i = locate(bp_, l, h);
  return i < 0 ? RationalPiece{kOne, kOne} : pieces_[i];
}

PiecewiseFn fgroup_mul(const PiecewiseFn& f, const PiecewiseFn& g) {
  auto bp = merged(f.breakpoints(), g.breakpoints());
  std::vector<Polynomial> pieces;
  for (size_t i = 0; i + 1 < bp.size(); ++i)
    pieces.push_back(f.piece_on(bp[i], bp[i + 1]) * g.piece_on(bp[i], bp[i + 1]));
  return PiecewiseFn(std::move(bp), std::move(pieces));
}

PiecewiseRationalFn fgroup_mul(const PiecewiseRationalFn& f, const PiecewiseRationalFn& g) {
  auto bp = merged(f.breakpoints(), g.breakpoints());
  std::vector<RationalPiece> pieces;
  for (size_t i = 0; i + 1 < bp.size(); ++i) {
    auto a = f.piece_on(bp[i], bp[i + 1]), b = g.piece_on(bp[i], bp[i + 1]);
    pieces.push_back({a.num * b.num, a.den * b.den});
  }
  return PiecewiseRationalFn(std::move(bp), std::move(pieces));
}

PiecewiseRationalFn fgroup_inv(const PiecewiseRationalFn& f) {
  std::vector<RationalPiece> pieces;
  for (const auto& p : f.pieces()) pieces.push_back({p.den, p.num});
  return PiecewiseRationalFn(f.breakpoints(), std::move(pieces));
}

namespace {

constexpr long kSubdivisionBudget = 1000000;

Enclosure max_enc(const Enclosure& a, const Enclosure& b) { return {std::max(a.lo, b.lo), std::max(a.hi, b.hi)}; }

}  // namespace

Enclosure rho_F(const PiecewiseRationalFn& f, const PiecewiseRationalFn& g, const Rational& tol) {
  require(tol > 0, ErrorCode::InvalidArgument, "rho_F needs tol > 0");
  auto bp = merged(f.breakpoints(), g.breakpoints());
  long budget = kSubdivisionBudget;
  Enclosure out = Enclosure::exact(0);
  for (size_t i = 0; i + 1 < bp.size(); ++i) {
    const Rational &l = bp[i], &h = bp[i + 1];
    auto a = f.piece_on(l, h), b = g.piece_on(l, h);
    // d = |K| S / T with K = N1 D2 - N2 D1, S = N1 N2 + D1 D2, T = N1 N2 D1 D2.
    Polynomial K = a.num * b.den - b.num * a.den;
    if (K.is_zero()) continue;
    Polynomial S = a.num * b.num + a.den * b.den;
    Polynomial T = a.num * b.num * a.den * b.den;
    out = max_enc(out, sup_ratio(K * S, T, l, h, tol, budget));
    out = max_enc(out, sup_ratio(-(K * S), T, l, h, tol, budget));
  }
  return out;
}

Enclosure sup_fn(const PiecewiseFn& f, const Rational& tol) {
  long budget = kSubdivisionBudget;
  Enclosure out = Enclosure::exact(1);
  for (size_t i = 0; i < f.pieces().size(); ++i)
    out = max_enc(out, sup_ratio(f.pieces()[i], kOne, f.breakpoints()[i], f.breakpoints()[i + 1], tol, budget));
  return out;
}

PiecewiseFn embed_group(const GroupElement& g) {
  require(g.domain() == GroupDomain::PositiveReal && g.base() == 1 && g.mode() == ScalarMode::ExactReal,
          ErrorCode::InvalidArgument, "embed_group needs an exact element of G*");
  auto s = g.seq().trimmed();
  Index L = s.tail_start();
  if (L == 1) return {};
  std::vector<Rational> bp{Rational(1, 2), Rational(1)};
  std::vector<Polynomial> pieces;
  Rational g1 = s.entry(1).real_part();
  pieces.push_back(Polynomial::linear(2 - g1, 2 * (g1 - 1)));
  for (Index n = 1; n < L; ++n) {
    Rational gn = s.entry(n).real_part(), slope = s.entry(n + 1).real_part() - gn;
    pieces.push_back(Polynomial::linear(gn - Rational(static_cast<long>(n)) * slope, slope));
    bp.push_back(Rational(static_cast<long>(n + 1)));
  }
  return PiecewiseFn(std::move(bp), std::move(pieces));
}

StepFn::StepFn(TailedSeq x) : x_(std::move(x)) {
  require(x_.base() == 1 && x_.mode() == ScalarMode::ExactReal && x_.positive() && x_.summable(),
          ErrorCode::InvalidArgument, "step functions need a positive summable exact base-1 sequence");
}

Rational StepFn::operator()(const Rational& t) const {
  require(t > 0, ErrorCode::Domain, "functions are defined on (0, inf)");
  if (t < 1) return 1;
  return x_.entry(floor(t).get_ui()).real_part();
}

double StepFn::eval(double t) const {
  if (t < 1) return 1.0;
  return x_.entry(static_cast<Index>(std::floor(t))).real_part().get_d();
}

Rational StepFn::norm() const { return 1 + l1_norm(x_).value(); }

StepFn embed_point(const TailedSeq& x) { return StepFn(x); }

L1Fn::L1Fn(std::vector<Rational> cuts, std::vector<Polynomial> pieces, TailedSeq tail)
    : cuts_(std::move(cuts)), pieces_(std::move(pieces)), tail_(std::move(tail)) {
  require(cuts_.size() == pieces_.size() + 1 && cuts_.front() == 0, ErrorCode::InvalidArgument,
          "L1 function needs cuts starting at 0 and one piece per interval");
  require(cuts_.back() == Rational(static_cast<long>(tail_.base())), ErrorCode::InvalidArgument,
          "last cut must be where the step tail begins");
  require(tail_.summable() && tail_.positive(), ErrorCode::InvalidArgument, "step tail must be positive and summable");
}

L1Fn L1Fn::from_step(const StepFn& s) {
  const auto& x = s.seq();
  Index M = x.tail_start();
  std::vector<Rational> cuts{0, 1};
  std::vector<Polynomial> pieces{kOne};
  for (Index n = 1; n < M; ++n) {
    cuts.push_back(Rational(static_cast<long>(n + 1)));
    pieces.push_back(Polynomial::constant(x.entry(n).real_part()));
  }
  return L1Fn(std::move(cuts), std::move(pieces), TailedSeq(M, {}, x.tail()));
}

Rational L1Fn::operator()(const Rational& t) const {
  require(t > 0, ErrorCode::Domain, "functions are defined on (0, inf)");
  if (t >= cuts_.back()) return tail_.entry(floor(t).get_ui()).real_part();
  auto it = std::upper_bound(cuts_.begin(), cuts_.end(), t);
  return pieces_[it - cuts_.begin() - 1](t);
}

L1Fn L1Fn::extended_to(Index M) const {
  if (M <= tail_from()) return *this;
  auto cuts = cuts_;
  auto pieces = pieces_;
  for (Index n = tail_from(); n < M; ++n) {
    cuts.push_back(Rational(static_cast<long>(n + 1)));
    pieces.push_back(Polynomial::constant(tail_.entry(n).real_part()));
  }
  auto t = tail_.extended_to(M);
  return L1Fn(std::move(cuts), std::move(pieces), TailedSeq(M, {}, t.tail()));
}

L1Fn L1Fn::refined(const std::vector<Rational>& extra) const {
  std::vector<Rational> inside;
  for (const auto& c : extra)
    if (c > 0 && c < cuts_.back()) inside.push_back(c);
  std::sort(inside.begin(), inside.end());
  auto cuts = merged(cuts_, inside);
  std::vector<Polynomial> pieces;
  for (size_t i = 0; i + 1 < cuts.size(); ++i) {
    auto it = std::upper_bound(cuts_.begin(), cuts_.end(), cuts[i]);
    pieces.push_back(pieces_[it - cuts_.begin() - 1]);
  }
  return L1Fn(std::move(cuts), std::move(pieces), tail_);
}

Rational L1Fn::norm() const {
  Rational total = 0;
  for (size_t i = 0; i < pieces_.size(); ++i) total += pieces_[i].integrate(cuts_[i], cuts_[i + 1]);
  return total + sum_from(tail_, tail_from()).real_part();
}

bool operator==(const L1Fn& a, const L1Fn& b) {
  Index M = std::max(a.tail_from(), b.tail_from());
  auto ea = a.extended_to(M), eb = b.extended_to(M);
  auto ra = ea.refined(eb.cuts()), rb = eb.refined(ea.cuts());
  return ra.cuts_ == rb.cuts_ && ra.pieces_ == rb.pieces_ && ra.tail_ == rb.tail_;
}

L1Fn act_L1(const PiecewiseFn& f, const L1Fn& g) {
  Index M = g.tail_from();
  if (!f.is_one()) M = std::max<Index>(M, ceil(f.breakpoints().back()).get_ui());
  auto h = g.extended_to(M).refined(f.breakpoints());
  std::vector<Polynomial> pieces;
  for (size_t i = 0; i < h.pieces().size(); ++i)
    pieces.push_back(f.piece_on(h.cuts()[i], h.cuts()[i + 1]) * h.pieces()[i]);
  return L1Fn(h.cuts(), std::move(pieces), h.tail());
}

ActL1Report act_L1_checked(const PiecewiseFn& f, const StepFn& g) {
  auto product = act_L1(f, L1Fn::from_step(g));
  Rational norm = product.norm(), g_norm = g.norm();
  Enclosure sf = sup_fn(f);
  // Certified when the bound holds even for the lower end of sup f.
  bool holds = norm <= sf.lo * g_norm;
  require(norm <= sf.hi * g_norm, ErrorCode::Invariant, "action norm bound violated");
  return {product, norm, g_norm, sf, holds};
}

GapReport counterexample_gap(const GroupElement& g, const GroupElement& h) {
  require(g.base() == 1 && h.base() == 1, ErrorCode::InvalidArgument, "counterexample_gap needs elements of G*");
  Rational g1 = g.at(1).exact_real(), h1 = h.at(1).exact_real();
  require(g1 != 1 && h1 != 1, ErrorCode::InvalidArgument,
          "counterexample_gap requires g(1) != 1 and h(1) != 1 (otherwise the gap is identically 0)");
  auto ctx = GroupCtx::Gstar();
  Rational half(1, 2), one(1);
  GapReport r;
  r.fg = embed_group(g).piece_on(half, one);
  r.fh = embed_group(h).piece_on(half, one);
  r.fgh = embed_group(group_mul(ctx, g, h)).piece_on(half, one);
  r.gap = r.fg * r.fh - r.fgh;
  r.identity = Polynomial::constant(2 * (g1 - 1) * (h1 - 1)) * Polynomial::linear(-1, 1) * Polynomial::linear(-1, 2);
  r.identity_holds = r.gap == r.identity;
  require(r.identity_holds, ErrorCode::Invariant, "gap polynomial differs from 2(x-1)(2x-1)(g(1)-1)(h(1)-1)");
  // Quadratic with roots 1/2 and 1: the extremum sits at the vertex 3/4.
  auto d = r.gap.derivative();
  r.extremum_x = -d.coeff(0) / d.coeff(1);
  r.extremum_value = r.gap(r.extremum_x);
  r.extremum_kind = r.gap.coeff(2) > 0 ? "minimum" : "maximum";
  return r;
}

Rational sup_abs_diff_affine(const PiecewiseFn& f, const PiecewiseFn& g) {
  require(f.degree() <= 1 && g.degree() <= 1, ErrorCode::InvalidArgument, "affine pieces required");
  Rational best = 0;
  for (const auto& x : merged(f.breakpoints(), g.breakpoints())) best = std::max(best, Rational(abs(f(x) - g(x))));
  return best;
}

std::vector<EmbedBoundRow> embed_continuity_bound(const std::vector<GroupElement>& gk, const GroupElement& g) {
  auto fg = embed_group(g);
  std::vector<EmbedBoundRow> rows;
  for (const auto& k : gk) {
    Rational lhs = sup_abs_diff_affine(embed_group(k), fg);
    Rational rhs = 2 * rho_sup(k, g).value();
    rows.push_back({lhs, rhs, lhs <= rhs});
  }
  return rows;
}

PiecewiseFn dense_class_member(std::uint64_t N, const Polynomial& P) {
  require(N >= 2, ErrorCode::InvalidArgument, "dense class needs N >= 2");
  Rational n(static_cast<long>(N)), inv(1, static_cast<long>(N));
  require(P.positive_on(inv, n), ErrorCode::InvalidArgument, "P must be positive on [1/N, N]");
  Rational p = P(inv), q = P(n);
  std::vector<Rational> bp{inv / 2, inv, n, n + inv};
  std::vector<Polynomial> pieces{
      Polynomial::linear(2 - p, -2 * n * (1 - p)),
      P,
      Polynomial::linear(q - n * n * (1 - q), n * (1 - q)),
  };
  return PiecewiseFn(std::move(bp), std::move(pieces)).simplified();
}

Polynomial dense_class_polynomial(std::uint64_t N, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto draw = [&](int lo, int hi) { return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1)); };
  Rational n(static_cast<long>(N)), inv(1, static_cast<long>(N));
  for (int attempt = 0; attempt < 1000; ++attempt) {
    int deg = draw(0, 4);
    std::vector<Rational> c;
    for (int k = 0; k <= deg; ++k) {
      Rational v(draw(k == 0 ? 1 : -9, 9), draw(1, 4));
      v.canonicalize();
      c.push_back(v);
    }
    Polynomial P(std::move(c));
    if (P.positive_on(inv, n)) return P;
  }
  fail(ErrorCode::Invariant, "no positive polynomial found in 1000 draws");
}

PiecewiseFn dense_class_sample(std::uint64_t N, std::uint64_t seed) {
  return dense_class_member(N, dense_class_polynomial(N, seed));
}

Json to_json(const Polynomial& p) {
  Json c = Json::array();
  for (const auto& x : p.coeffs()) c.push_back(to_string(x));
  return Json{{"coefficients", c}, {"text", p.to_string()}};
}

Json to_json(const PiecewiseFn& f) {
  Json bp = Json::array(), pieces = Json::array();
  for (const auto& b : f.breakpoints()) bp.push_back(to_string(b));
  for (const auto& p : f.pieces()) {
    Json c = Json::array();
    for (const auto& x : p.coeffs()) c.push_back(to_string(x));
    pieces.push_back(c);
  }
  return Json{{"breakpoints", bp}, {"pieces", pieces}};
}

PiecewiseFn piecewise_from_json(const Json& j) {
  try {
    std::vector<Rational> bp;
    std::vector<Polynomial> pieces;
    for (const auto& b : j.at("breakpoints")) bp.push_back(parse_rational(b.get<std::string>()));
    for (const auto& p : j.at("pieces")) {
      std::vector<Rational> c;
      for (const auto& x : p) c.push_back(parse_rational(x.get<std::string>()));
      pieces.emplace_back(std::move(c));
    }
    return PiecewiseFn(std::move(bp), std::move(pieces));
  } catch (const Json::exception& e) {
    fail(ErrorCode::Parse, std::string("bad piecewise record: ") + e.what());
  }
}

Json to_json(const StepFn& s) { return Json{{"kind", "step"}, {"x", to_json(s.seq())}}; }

}  // namespace polact
