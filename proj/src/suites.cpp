#include "polact/suites.hpp"

#include <cmath>
#include <map>
#include <queue>
#include <random>
#include <set>

#include "polact/actions.hpp"
#include "polact/error.hpp"
#include "polact/funcspace.hpp"
#include "polact/measures.hpp"
#include "polact/orbitlab.hpp"

namespace polact {

namespace {

const char* code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidArgument: return "invalid_argument";
    case ErrorCode::Parse: return "parse";
    case ErrorCode::ModeMismatch: return "mode_mismatch";
    case ErrorCode::Domain: return "domain";
    case ErrorCode::Invariant: return "invariant";
    case ErrorCode::Undecided: return "undecided";
    case ErrorCode::Index: return "index";
  }
  return "unknown";
}

// Collects pass/fail counts for one invariant and keeps the first failures.
class Recorder {
 public:
  Recorder(std::vector<InvariantResult>& out, std::string name, std::string module) : out_(out), i_(out.size()) {
    InvariantResult r;
    r.name = std::move(name);
    r.module = std::move(module);
    out.push_back(std::move(r));
  }

  void check(bool ok, const Json& witness = Json::object()) {
    ++out_[i_].checks;
    if (!ok) fail_with(witness);
  }
  void fail_with(const Json& witness) {
    auto& r = out_[i_];
    ++r.failed;
    if (r.failures.size() < 5) r.failures.push_back(witness);
  }

  // Runs body; an exception counts as one failed check.
  template <typename F>
  void guard(F&& body) {
    try {
      body();
    } catch (const Error& e) {
      ++out_[i_].checks;
      fail_with({{"error", code_name(e.code())}, {"message", e.what()}});
    } catch (const std::exception& e) {
      ++out_[i_].checks;
      fail_with({{"error", "internal"}, {"message", e.what()}});
    }
  }

 private:
  std::vector<InvariantResult>& out_;
  std::size_t i_;
};

using Rng = std::mt19937_64;

// Portable draws: plain modulo on the raw engine output.
long draw(Rng& rng, long lo, long hi) { return lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1)); }

Rational ratio(long num, long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational rand_pos(Rng& rng) {
  Rational r(draw(rng, 1, 9), draw(rng, 1, 9));
  r.canonicalize();
  return r;
}

Rational rand_nonzero(Rng& rng) {
  Rational r = rand_pos(rng);
  return draw(rng, 0, 1) ? r : Rational(-r);
}

Json frac(const Rational& q) { return to_string(q); }

// A few positive atoms and a geometric tail, scaled to mass 1.
PMeasure rand_measure(Rng& rng) {
  long k = draw(rng, 0, 3);
  std::vector<Rational> atoms;
  for (long i = 0; i < k; ++i) atoms.push_back(rand_pos(rng));
  Rational r(1, draw(rng, 2, 5));
  Rational a = rand_pos(rng);
  Rational mass = a / (1 - r);
  for (auto& x : atoms) mass += x;
  std::vector<Scalar> p;
  for (auto& x : atoms) p.push_back(Scalar(Rational(x / mass)));
  return PMeasure::geometric(std::move(p), a / mass, r);
}

TailedSeq rand_const_tail(Rng& rng) {
  std::vector<Scalar> p;
  for (int i = 0; i < 4; ++i) p.push_back(Scalar(rand_pos(rng)));
  return TailedSeq::constant(0, std::move(p), Scalar(rand_pos(rng)));
}

// Positive (or nonvanishing complex) summable sequence with ratio <= 1/2.
TailedSeq rand_point(Rng& rng, Index base, bool complex = false) {
  long k = draw(rng, 0, 3);
  std::vector<Scalar> p;
  for (long i = 0; i < k; ++i) {
    p.push_back(complex ? Scalar::complex(rand_nonzero(rng), rand_nonzero(rng)) : Scalar(rand_pos(rng)));
  }
  Rational r(1, draw(rng, 2, 6));
  if (complex) {
    return TailedSeq::geometric(base, std::move(p), Scalar::complex(rand_nonzero(rng), rand_nonzero(rng)),
                                Scalar::complex(r, r));
  }
  return TailedSeq::geometric(base, std::move(p), Scalar(rand_pos(rng)), Scalar(r));
}

GroupElement rand_g(Rng& rng, Index base, std::size_t len) {
  std::vector<Scalar> p;
  for (std::size_t i = 0; i < len; ++i) p.push_back(Scalar(rand_pos(rng)));
  return GroupElement::from_prefix(GroupDomain::PositiveReal, base, std::move(p));
}

GroupElement rand_h(Rng& rng, std::size_t len) {
  std::vector<Scalar> p;
  for (std::size_t i = 0; i < len; ++i) p.push_back(Scalar::complex(rand_nonzero(rng), rand_nonzero(rng)));
  return GroupElement::from_prefix(GroupDomain::NonzeroComplex, 0, std::move(p));
}

// Truncated sum of |x(n) - y(n)| over [from, from + terms), entry by entry.
Rational brute_diff_sum(const TailedSeq& x, const TailedSeq& y, Index from, Index terms) {
  Rational total = 0;
  for (Index n = from; n < from + terms; ++n) total += abs(x.entry(n).exact_real() - y.entry(n).exact_real());
  return total;
}

Rng seeded(const SuiteOptions& o, std::uint64_t salt) { return Rng(o.seed * 1000003ULL + salt); }

}  // namespace

Json to_json(const InvariantResult& r) {
  return {{"name", r.name},     {"module", r.module},     {"passed", r.passed()},
          {"checks", r.checks}, {"failed", r.failed},     {"failures", r.failures}};
}

std::vector<InvariantResult> isometry_suite(const SuiteOptions& o) {
  std::vector<InvariantResult> out;
  Rng rng = seeded(o, 1);
  {
    Recorder iso(out, "psi_isometry", "measures");
    Recorder comp(out, "psi_composition", "measures");
    Recorder inv(out, "psi_inverse_law", "measures");
    for (std::size_t i = 0; i < o.count; ++i) {
      iso.guard([&] {
        auto P = rand_measure(rng);
        auto xi = normalize(P, rand_const_tail(rng));
        auto z1 = normalize(P, rand_const_tail(rng));
        auto z2 = normalize(P, rand_const_tail(rng));
        auto Q = phi(P, xi);
        auto p1 = psi(P, xi, z1), p2 = psi(P, xi, z2);
        Rational lhs = weighted_l1_dist(Q, p1.seq(), p2.seq()).value();
        Rational rhs = weighted_l1_dist(P, z1.seq(), z2.seq()).value();
        iso.check(lhs == rhs, {{"instance", i}, {"psi_dist", frac(lhs)}, {"zeta_dist", frac(rhs)}});

        // Entrywise on the prefix, then the tail models themselves.
        auto a = phi(Q, p1), b = phi(P, z1);
        Index end = std::max(a.seq().tail_start(), b.seq().tail_start()) + 3;
        bool ok = true;
        for (Index n = 0; n < end; ++n) ok = ok && a.atom(n) == Q.atom(n) * p1.at(n) && a.atom(n) == b.atom(n);
        comp.check(ok && a == b, {{"instance", i}});

        inv.check(psi(Q, inverse_density(xi), p1).seq() == z1.seq(), {{"instance", i}});
      });
    }
  }
  return out;
}

std::vector<InvariantResult> strong_approx_suite(const SuiteOptions& o) {
  std::vector<InvariantResult> out;
  Rng rng = seeded(o, 2);
  const std::vector<Rational> schedule{Rational(1), Rational(1, 10), Rational(1, 100), Rational(1, 1000)};
  Recorder res(out, "strong_approx_residual", "measures");
  Recorder least(out, "strong_approx_least_n", "measures");
  Recorder trip(out, "phi_e_related_roundtrip", "measures");
  std::size_t n = std::max<std::size_t>(20, o.count);
  for (std::size_t i = 0; i < n; ++i) {
    res.guard([&] {
      auto P = rand_measure(rng);
      auto Q = rand_measure(rng);
      auto xi = e_related(P, Q);
      trip.check(phi(P, xi) == Q, {{"instance", i}, {"direction", "phi(e_related(P, Q)) = Q"}});
      auto zeta = normalize(P, rand_const_tail(rng));
      trip.check(e_related(P, phi(P, zeta)).seq() == zeta.seq(),
                 {{"instance", i}, {"direction", "e_related(P, phi(zeta)) = zeta"}});
      Rational prev = -1;
      for (const auto& eps : schedule) {
        auto w = strong_approx_witness(P, xi, eps);
        Rational direct = weighted_l1_dist(P, xi.seq(), w.g.seq()).value();
        bool ok = w.residual < eps && w.residual == direct && (prev < 0 || w.residual <= prev);
        res.check(ok, {{"instance", i}, {"eps", frac(eps)}, {"N", w.N}, {"residual", frac(w.residual)},
                       {"direct", frac(direct)}});
        prev = w.residual;
        // N - 1 must fail a tail bound; tails from mass 1 and expectation 1.
        if (w.N > 0) {
          Rational tp = 1, tx = 1;
          for (Index k = 0; k < w.N; ++k) {
            tp -= P.atom(k);
            tx -= xi.at(k) * P.atom(k);
          }
          least.check(tp >= eps / 2 || tx >= eps / 2, {{"instance", i}, {"eps", frac(eps)}, {"N", w.N}});
        }
      }
    });
  }
  return out;
}

std::vector<InvariantResult> density_meager_suite(const SuiteOptions& o) {
  std::vector<InvariantResult> out;
  Rng rng = seeded(o, 3);
  auto ctx = ActionCtx::G_on_P();
  {
    Recorder res(out, "density_witness_residual", "actions");
    Recorder mono(out, "density_witness_monotone", "actions");
    for (std::size_t i = 0; i < o.count; ++i) {
      res.guard([&] {
        auto x = rand_point(rng, 0), y = rand_point(rng, 0);
        Rational prev = -1;
        for (Index N = 0; N <= 20; ++N) {
          auto w = density_witness(ctx, x, y, N);
          Rational r = w.residual.value();
          Rational acted = l1_dist(act(ctx, w.h, x), y).value();
          bool ok = r == acted;
          if (N == 0 || N == 20) {
            // Ratios are at most 1/2, so 200 terms leave less than 2^-190.
            Rational partial = brute_diff_sum(x, y, N + 1, 200);
            ok = ok && partial <= r && r - partial < pow(Rational(1, 2), 190);
          }
          res.check(ok, {{"instance", i}, {"N", N}, {"residual", frac(r)}, {"acted", frac(acted)}});
          mono.check(prev < 0 || r <= prev, {{"instance", i}, {"N", N}, {"residual", frac(r)}, {"previous", frac(prev)}});
          prev = r;
        }
      });
    }
  }
  {
    Recorder in_m(out, "orbit_lies_in_meager_set", "actions");
    Recorder esc(out, "meager_escape_leaves_set", "actions");
    for (std::size_t i = 0; i < o.count; ++i) {
      in_m.guard([&] {
        bool cx = i % 2 == 1;
        auto x = rand_point(rng, 0, cx), z = rand_point(rng, 0, cx);
        MeagerSetParams p{x, o.meager_ratio_bound};
        p.validate();
        auto h = cx ? rand_h(rng, 1 + i % 4) : rand_g(rng, 0, 1 + i % 4);
        auto hx = act(cx ? ActionCtx::H_on_L1() : ctx, h, x);
        in_m.check(meager_member(p, hx).member, {{"instance", i}, {"h", to_json(h.seq())}});
        for (Index N = 0; N < 4; ++N) {
          auto e = meager_escape(p, z, N);
          bool agrees = true;
          for (Index n = 0; n <= N; ++n) agrees = agrees && e.z_n.entry(n) == z.entry(n);
          esc.check(!meager_member(p, e.z_n).member && agrees,
                    {{"instance", i}, {"N", N}, {"z_N", to_json(e.z_n)}});
        }
      });
    }
  }
  return out;
}

std::vector<InvariantResult> group_continuity_suite(const SuiteOptions& o) {
  std::vector<InvariantResult> out;
  Rng rng = seeded(o, 4);
  {
    Recorder ax(out, "group_axioms", "groups");
    for (auto ctx : {GroupCtx::G(), GroupCtx::Gstar(), GroupCtx::H()}) {
      bool cx = ctx.domain == GroupDomain::NonzeroComplex;
      auto mk = [&](std::size_t len) { return cx ? rand_h(rng, len) : rand_g(rng, ctx.base, len); };
      auto e = group_identity(ctx, cx ? ScalarMode::ExactComplex : ScalarMode::ExactReal);
      for (std::size_t i = 0; i < o.count; ++i) {
        ax.guard([&] {
          auto a = mk(1 + i % 4), b = mk(3), c = mk(2);
          bool ok = group_mul(ctx, group_mul(ctx, a, b), c) == group_mul(ctx, a, group_mul(ctx, b, c)) &&
                    group_mul(ctx, a, e) == a && group_mul(ctx, e, a) == a &&
                    group_mul(ctx, a, group_inv(ctx, a)) == e && group_mul(ctx, a, b) == group_mul(ctx, b, a);
          ax.check(ok, {{"group", ctx.name()}, {"instance", i}});
        });
      }
    }
  }
  {
    Recorder iso(out, "inversion_isometry", "groups");
    auto G = GroupCtx::G(), H = GroupCtx::H();
    for (std::size_t i = 0; i < o.count; ++i) {
      iso.guard([&] {
        auto f = rand_g(rng, 0, 3), g = rand_g(rng, 0, 4);
        Rational a = rho_sup(group_inv(G, f), group_inv(G, g)).value(), b = rho_sup(f, g).value();
        iso.check(a == b, {{"group", "G"}, {"instance", i}, {"inverse", frac(a)}, {"direct", frac(b)}});
        // In H both distances share the same two squared terms, swapped.
        auto fh = rand_h(rng, 3), gh = rand_h(rng, 3);
        auto fi = group_inv(H, fh), gi = group_inv(H, gh);
        bool ok = true;
        for (Index n = 0; n < 3; ++n) {
          auto t = cstar_terms(fh.at(n), gh.at(n)), u = cstar_terms(fi.at(n), gi.at(n));
          ok = ok && t.diff2 == u.inv_diff2 && t.inv_diff2 == u.diff2;
        }
        iso.check(ok && overlaps(rho_sup(fi, gi, o.tol), rho_sup(fh, gh, o.tol)), {{"group", "H"}, {"instance", i}});
      });
    }
  }
  {
    Recorder tb(out, "translation_bound", "groups");
    for (auto ctx : {GroupCtx::G(), GroupCtx::H()}) {
      bool cx = ctx.domain == GroupDomain::NonzeroComplex;
      for (std::size_t i = 0; i < o.count; ++i) {
        tb.guard([&] {
          auto f = cx ? rand_h(rng, 3) : rand_g(rng, 0, 3);
          auto g = cx ? rand_h(rng, 2) : rand_g(rng, 0, 2);
          auto h = cx ? rand_h(rng, 4) : rand_g(rng, 0, 4);
          auto v = verify_translation_bound(ctx, f, g, h, o.tol);
          bool ok = v.holds && (cx || v.method == "exact");
          tb.check(ok, {{"group", ctx.name()}, {"instance", i}, {"lhs", to_json(v.lhs)}, {"rhs", to_json(v.rhs)},
                        {"method", v.method}});
        });
      }
    }
  }
  {
    Recorder ab(out, "action_bound", "actions");
    for (auto ctx : {ActionCtx::G_on_P(), ActionCtx::Gstar_on_Pstar(), ActionCtx::H_on_L1()}) {
      bool cx = ctx.space == SpaceTag::L1Cstar;
      for (std::size_t i = 0; i < o.count; ++i) {
        ab.guard([&] {
          auto h = cx ? rand_h(rng, 3) : rand_g(rng, ctx.group.base, 3);
          auto x = rand_point(rng, ctx.group.base, cx);
          auto lhs = l1_norm(act(ctx, h, x), o.tol);
          auto rhs = sup_abs(h, o.tol) * l1_norm(x, o.tol);
          bool ok = cx ? (certainly_le(lhs, rhs) || overlaps(lhs, rhs)) : lhs.value() <= rhs.value();
          ab.check(ok, {{"space", space_name(ctx.space)}, {"instance", i}, {"lhs", to_json(lhs)}, {"rhs", to_json(rhs)}});
        });
      }
    }
  }
  {
    Recorder jc(out, "joint_continuity_bound", "actions");
    auto ctx = ActionCtx::G_on_P();
    for (std::size_t i = 0; i < o.count; ++i) {
      jc.guard([&] {
        auto h = rand_g(rng, 0, 3), hk = rand_g(rng, 0, 3);
        auto x = rand_point(rng, 0), xk = rand_point(rng, 0);
        auto v = check_joint_continuity(ctx, hk, xk, h, x, o.tol);
        jc.check(v.holds, {{"instance", i}, {"lhs", to_json(v.lhs)}, {"rhs", to_json(v.rhs)}});
      });
    }
  }
  return out;
}

namespace {

// Midpoint rule over [0, M] with `per_unit` cells per unit, plus the step
// tail summed from M on. The step factor is constant on each unit cell.
double riemann_norm(const PiecewiseFn& f, const StepFn& g, long M, long per_unit) {
  double total = 0, h = 1.0 / static_cast<double>(per_unit);
  for (long u = 0; u < M; ++u) {
    double gu = g.eval(static_cast<double>(u) + 0.5), cell_sum = 0;
    for (long k = 0; k < per_unit; ++k) cell_sum += f.eval(static_cast<double>(u) + (static_cast<double>(k) + 0.5) * h);
    total += cell_sum * h * gu;
  }
  for (long n = M; n < M + 2000; ++n) total += g.eval(static_cast<double>(n));
  return total;
}

}  // namespace

std::vector<InvariantResult> funcspace_suite(const SuiteOptions& o) {
  std::vector<InvariantResult> out;
  Rng rng = seeded(o, 5);
  {
    Recorder emb(out, "embed_group_in_F", "funcspace");
    for (std::size_t i = 0; i < o.count; ++i) {
      emb.guard([&] {
        auto g = rand_g(rng, 1, 1 + i % 5);
        auto f = embed_group(g);
        PiecewiseFn revalidated(f.breakpoints(), f.pieces());
        bool ok = revalidated == f && f(Rational(1, 2)) == 1;
        for (Index n = 1; n < 8; ++n) ok = ok && f(Rational(static_cast<long>(n))) == g.at(n).real_part();
        emb.check(ok, {{"instance", i}, {"g", to_json(g.seq())}});
      });
    }
  }
  {
    Recorder sn(out, "step_embedding_norm", "funcspace");
    for (std::size_t i = 0; i < o.count; ++i) {
      sn.guard([&] {
        auto x = rand_point(rng, 1);
        auto s = embed_point(x);
        Rational expect = 1 + l1_norm(x).value();
        Rational integrated = L1Fn::from_step(s).norm();
        sn.check(s.norm() == expect && integrated == expect,
                 {{"instance", i}, {"norm", frac(s.norm())}, {"integrated", frac(integrated)}, {"expected", frac(expect)}});
      });
    }
  }
  {
    Recorder cb(out, "embed_continuity_bound", "funcspace");
    for (std::size_t i = 0; i < o.count; ++i) {
      cb.guard([&] {
        auto g = rand_g(rng, 1, 3);
        std::vector<GroupElement> gk{rand_g(rng, 1, 1 + i % 4), g};
        auto rows = embed_continuity_bound(gk, g);
        bool ok = rows.size() == 2 && rows[1].lhs == 0 && rows[1].rhs == 0;
        for (const auto& r : rows) ok = ok && r.holds && r.lhs <= r.rhs;
        // The affine sup against a dense grid.
        auto fk = embed_group(gk[0]), fg = embed_group(g);
        double grid = 0;
        for (int k = 1; k <= 8000; ++k) {
          double x = k / 1000.0;
          grid = std::max(grid, std::abs(fk.eval(x) - fg.eval(x)));
        }
        ok = ok && std::abs(grid - rows[0].lhs.get_d()) < 1e-12;
        cb.check(ok, {{"instance", i}, {"lhs", frac(rows[0].lhs)}, {"rhs", frac(rows[0].rhs)}, {"grid", grid}});
      });
    }
  }
  {
    Recorder gap(out, "gap_identity", "funcspace");
    gap.guard([&] {
      auto two = GroupElement::from_prefix(GroupDomain::PositiveReal, 1, {Scalar(Rational(2))});
      auto r = counterexample_gap(two, two);
      Rational at = r.gap(Rational(3, 4));
      gap.check(r.identity_holds && at == Rational(-1, 4), {{"instance", "g(1) = h(1) = 2"}, {"value_at_3/4", frac(at)}});
    });
    for (std::size_t i = 0; i < o.count; ++i) {
      gap.guard([&] {
        auto g = rand_g(rng, 1, 3), h = rand_g(rng, 1, 2);
        if (g.at(1).is_one() || h.at(1).is_one()) return;
        auto r = counterexample_gap(g, h);
        auto fg = embed_group(g), fh = embed_group(h), fgh = embed_group(group_mul(GroupCtx::Gstar(), g, h));
        bool ok = r.identity_holds;
        for (int k = 0; k <= 12; ++k) {
          Rational x = Rational(1, 2) + ratio(k, 24);
          ok = ok && fg(x) * fh(x) - fgh(x) == r.gap(x);
        }
        double best = 0;
        for (int k = 0; k <= 10000; ++k) {
          double v = r.gap.eval(0.5 + 0.5 * k / 10000);
          if (std::abs(v) > std::abs(best)) best = v;
        }
        ok = ok && std::abs(best - r.extremum_value.get_d()) < 1e-9;
        gap.check(ok, {{"instance", i}, {"gap", r.gap.to_string()}, {"extremum", frac(r.extremum_value)}, {"grid", best}});
      });
    }
  }
  {
    Recorder rie(out, "act_L1_riemann", "funcspace");
    auto base = GroupElement::from_prefix(GroupDomain::PositiveReal, 1,
                                          {Scalar(Rational(5, 4)), Scalar(Rational(2, 3)), Scalar(Rational(3))});
    for (std::uint64_t k = 1; k <= 10; ++k) {
      rie.guard([&] {
        std::uint64_t seed = o.seed * 100 + k;
        auto f = fgroup_mul(dense_class_sample(2 + k % 4, seed), embed_group(base));
        std::vector<Scalar> p;
        for (long j = 0; j < 4; ++j) p.push_back(Scalar(ratio(static_cast<long>(k) + j, 7)));
        auto s = embed_point(TailedSeq::geometric(1, p, Scalar(Rational(1, 5)), Scalar(Rational(2, 3))));
        auto rep = act_L1_checked(f, s);
        double oracle = riemann_norm(f, s, 10, std::max(1L, o.riemann_cells / 10));
        double err = std::abs(rep.norm.get_d() - oracle);
        rie.check(err < 1e-6 && rep.bound_holds,
                  {{"instance", k}, {"symbolic", exact_json(rep.norm)}, {"riemann", oracle}, {"error", err}});
      });
    }
  }
  return out;
}

namespace {

TailedSeq orbit_center(std::vector<double> head) {
  std::vector<Scalar> p;
  for (double v : head) p.push_back(Scalar::floating(v));
  return TailedSeq::geometric(0, std::move(p), Scalar::floating(0.125), Scalar::floating(0.5));
}

std::vector<std::vector<double>> sorted_coords(const OrbitReport& r) {
  std::vector<std::vector<double>> c;
  for (const auto& pt : r.points) c.push_back(pt.coords);
  std::sort(c.begin(), c.end());
  return c;
}

bool coords_match(const std::vector<std::vector<double>>& a, const std::vector<std::vector<double>>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < a[i].size(); ++k)
      if (std::abs(a[i][k] - b[i][k]) > 1e-12) return false;
  return true;
}

// Points x_i f^{j_i} reachable from j = 0 by unit exponent steps inside the
// open l1 ball of radius u.
std::vector<std::vector<double>> lattice_oracle(const std::vector<double>& x, double f, double u) {
  std::size_t n = x.size();
  auto point = [&](const std::vector<int>& j) {
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = x[i] * std::pow(f, j[i]);
    return y;
  };
  auto inside = [&](const std::vector<double>& y) {
    double s = 0;
    for (std::size_t i = 0; i < n; ++i) s += std::abs(y[i] - x[i]);
    return s < u;
  };
  std::set<std::vector<int>> seen{std::vector<int>(n, 0)};
  std::queue<std::vector<int>> q;
  q.push(std::vector<int>(n, 0));
  while (!q.empty()) {
    auto j = q.front();
    q.pop();
    for (std::size_t i = 0; i < n; ++i) {
      for (int s : {1, -1}) {
        auto k = j;
        k[i] += s;
        if (!seen.count(k) && inside(point(k))) {
          seen.insert(k);
          q.push(k);
        }
      }
    }
  }
  std::vector<std::vector<double>> out;
  for (const auto& j : seen) out.push_back(point(j));
  std::sort(out.begin(), out.end());
  return out;
}

// FIFO search over the same log grid with a std::map store.
std::vector<std::vector<long>> naive_grid_bfs(const LocalOrbitParams& p, const std::vector<Move>& moves) {
  std::vector<double> x;
  for (std::size_t i = 0; i < p.dims; ++i) x.push_back(p.center.entry(static_cast<Index>(i)).float_value());
  auto key = [&](const std::vector<double>& y) {
    std::vector<long> k;
    for (double c : y) k.push_back(static_cast<long>(std::floor(std::log(c) / (p.eps / 2))));
    return k;
  };
  std::map<std::vector<long>, std::vector<double>> store{{key(x), x}};
  std::queue<std::vector<double>> q;
  q.push(x);
  while (!q.empty()) {
    auto y = q.front();
    q.pop();
    for (const auto& m : moves) {
      auto z = y;
      if (p.global_moves) {
        for (auto& c : z) c *= m.value;
      } else {
        z[m.coord] *= m.value;
      }
      double s = 0;
      for (std::size_t i = 0; i < z.size(); ++i) s += std::abs(z[i] - x[i]);
      if (s >= p.u_radius) continue;
      if (store.emplace(key(z), z).second) q.push(z);
    }
  }
  std::vector<std::vector<long>> out;
  for (const auto& kv : store) out.push_back(kv.first);
  return out;
}

}  // namespace

LocalOrbitParams reference_orbit_params() {
  LocalOrbitParams p{orbit_center({0.5, 0.25})};
  p.dims = 2;
  p.delta = 0.01;
  p.u_radius = 0.2;
  p.v_radius = 0.05;
  p.eps = 0.02;
  p.budget = 100000;
  return p;
}

std::vector<InvariantResult> orbit_suite(const SuiteOptions& o) {
  std::vector<InvariantResult> out;
  auto ref = reference_orbit_params();
  ref.seed = o.seed;
  {
    Recorder dens(out, "orbit_reference_density", "orbitlab");
    Recorder ctl(out, "orbit_control_below_treatment", "orbitlab");
    Recorder rep(out, "orbit_witness_replay", "orbitlab");
    dens.guard([&] {
      auto r = explore(ref);
      auto d = density_probe(ref, r, 0.05, ref.eps);
      auto cp = ref;
      cp.global_moves = true;
      auto c = explore(cp);
      auto dc = density_probe(cp, c, 0.05, ref.eps);
      Json w{{"fraction", d.fraction}, {"control_fraction", dc.fraction}, {"grid_points", d.grid_points},
             {"reached", r.points.size()}, {"control_reached", c.points.size()}};
      dens.check(d.fraction >= 0.9, w);
      ctl.check(dc.fraction < d.fraction, w);
      // Full path replay for every reached point of both runs.
      for (const auto* run : {&r, &c}) {
        const auto& params = run == &r ? ref : cp;
        for (std::size_t i = 0; i < run->points.size(); ++i) {
          auto one = replay_witness(params, *run, i);
          rep.check(one.max_deviation <= 1e-9 && one.all_inside,
                    {{"point", i}, {"deviation", one.max_deviation}, {"inside", one.all_inside}});
        }
      }
    });
  }
  {
    Recorder eq(out, "orbit_exhaustive_oracle", "orbitlab");
    eq.guard([&] {
      LocalOrbitParams p1{orbit_center({1.0})};
      p1.dims = 1;
      p1.u_radius = 0.1;
      p1.factors = {1.01};
      p1.eps = 0.001;
      auto r1 = explore(p1);
      eq.check(r1.frontier_exhausted && coords_match(sorted_coords(r1), lattice_oracle({1.0}, 1.01, 0.1)),
               {{"instance", "n=1 lattice"}, {"reached", r1.points.size()}});

      LocalOrbitParams p2{orbit_center({0.5, 0.25})};
      p2.dims = 2;
      p2.u_radius = 0.05;
      p2.factors = {1.01};
      p2.eps = 0.001;
      auto r2 = explore(p2);
      eq.check(r2.frontier_exhausted && coords_match(sorted_coords(r2), lattice_oracle({0.5, 0.25}, 1.01, 0.05)),
               {{"instance", "n=2 lattice"}, {"reached", r2.points.size()}});

      for (double u : {0.08, 0.2}) {
        for (std::size_t levels : {1, 2}) {
          for (bool global : {false, true}) {
            auto p = ref;
            p.u_radius = u;
            p.levels = levels;
            p.global_moves = global;
            auto r = explore(p);
            eq.check(r.frontier_exhausted && r.keys() == naive_grid_bfs(p, r.moves),
                     {{"instance", "n=2 grid"}, {"u_radius", u}, {"levels", levels}, {"global", global}});
          }
        }
      }
      LocalOrbitParams p3{orbit_center({2.0})};
      p3.dims = 1;
      p3.u_radius = 0.5;
      p3.delta = 0.03;
      p3.v_radius = 0.1;
      p3.levels = 3;
      auto r3 = explore(p3);
      eq.check(r3.frontier_exhausted && r3.keys() == naive_grid_bfs(p3, r3.moves), {{"instance", "n=1 grid"}});
    });
  }
  return out;
}

const std::vector<NamedSuite>& all_suites() {
  static const std::vector<NamedSuite> suites{
      {"isometry", isometry_suite},           {"strong_approximation", strong_approx_suite},
      {"density_meagerness", density_meager_suite}, {"group_continuity", group_continuity_suite},
      {"function_space", funcspace_suite},    {"orbit_lab", orbit_suite},
  };
  return suites;
}

}  // namespace polact
