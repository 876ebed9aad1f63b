#include <random>

#include "doctest.h"
#include "polact/actions.hpp"
#include "polact/error.hpp"
#include "support.hpp"

using namespace testing_support;

namespace {

// Random positive summable sequence: short prefix then a geometric tail.
TailedSeq random_point(std::mt19937_64& rng, Index base, bool complex = false) {
  std::uniform_int_distribution<int> len(0, 3), den(2, 6);
  std::vector<Scalar> p;
  int k = len(rng);
  for (int i = 0; i < k; ++i) {
    if (complex) p.push_back(Scalar::complex(random_nonzero(rng), random_nonzero(rng)));
    else p.push_back(Scalar(random_positive(rng)));
  }
  Rational r(1, den(rng));
  if (complex) {
    return TailedSeq::geometric(base, std::move(p), Scalar::complex(random_nonzero(rng), random_nonzero(rng)),
                                Scalar::complex(r, r));
  }
  return TailedSeq::geometric(base, std::move(p), Scalar(random_positive(rng)), Scalar(r));
}

// Last index n in [from, to) with |y(n)/x(n)| > bound, scanning every entry.
std::optional<Index> brute_last_violation(const TailedSeq& y, const TailedSeq& x, const Rational& bound, Index from,
                                          Index to) {
  std::optional<Index> last;
  for (Index n = from; n < to; ++n) {
    if ((y.entry(n) / x.entry(n)).abs2() > bound * bound) last = n;
  }
  return last;
}

}  // namespace

TEST_CASE("action pairs") {
  CHECK_NOTHROW(ActionCtx::G_on_P().validate());
  CHECK_NOTHROW(ActionCtx::H_on_L1().validate());
  CHECK_NOTHROW(ActionCtx::Gstar_on_Pstar().validate());
  CHECK_THROWS_AS((ActionCtx{GroupCtx::G(), SpaceTag::Pstar}.validate()), Error);
  CHECK_THROWS_AS((ActionCtx{GroupCtx::H(), SpaceTag::P}.validate()), Error);
  // P needs positive entries, L1Cstar only nonzero ones.
  auto neg = geom(0, {"-1"}, "1/2", "1/2");
  CHECK_FALSE(ActionCtx::G_on_P().contains(neg));
  CHECK(ActionCtx::H_on_L1().contains(neg));
  CHECK_FALSE(ActionCtx::G_on_P().contains(cons(0, {}, "1")));
}

TEST_CASE("act examples") {
  auto ctx = ActionCtx::G_on_P();
  auto x = geom(0, {}, "1/2", "1/2");
  CHECK(act(ctx, group_identity(ctx.group), x) == x);
  auto y = act(ctx, gelem(0, {"2"}), x);
  CHECK(y == geom(0, {"1"}, "1/4", "1/2"));
  CHECK(l1_norm(y).value() == q("3/2"));
  CHECK(q("3/2") <= q("2") * l1_norm(x).value());
  auto g = gelem(0, {"3", "1/5"});
  CHECK(act(ctx, g, act(ctx, group_inv(ctx.group, g), x)) == x);
  CHECK_THROWS_AS(act(ctx, gelem(1, {"2"}), x), Error);
}

TEST_CASE("action and identity laws on random triples") {
  std::mt19937_64 rng(21);
  for (auto ctx : {ActionCtx::G_on_P(), ActionCtx::Gstar_on_Pstar()}) {
    for (int i = 0; i < 50; ++i) {
      auto g = random_g(rng, ctx.group.base, 3), h = random_g(rng, ctx.group.base, 2);
      auto x = random_point(rng, ctx.group.base);
      CHECK(act(ctx, g, act(ctx, h, x)) == act(ctx, group_mul(ctx.group, g, h), x));
      CHECK(act(ctx, group_identity(ctx.group), x) == x);
      CHECK(ctx.contains(act(ctx, g, x)));
    }
  }
  auto ctx = ActionCtx::H_on_L1();
  for (int i = 0; i < 50; ++i) {
    auto g = random_h(rng, 3), h = random_h(rng, 2);
    auto x = random_point(rng, 0, true);
    CHECK(act(ctx, g, act(ctx, h, x)) == act(ctx, group_mul(ctx.group, g, h), x));
    CHECK(ctx.contains(act(ctx, g, x)));
  }
}

TEST_CASE("orbit_member") {
  auto ctx = ActionCtx::G_on_P();
  auto x = geom(0, {"3"}, "1/2", "1/2");
  CHECK(*orbit_member(ctx, x, x) == group_identity(ctx.group));
  auto g = gelem(0, {"2"});
  CHECK(*orbit_member(ctx, act(ctx, g, x), x) == g);
  CHECK_FALSE(orbit_member(ctx, geom(0, {}, "1/3", "1/3"), geom(0, {}, "1/2", "1/2")).has_value());
  // Same ratio, different coefficient: the quotient tends to 2, not 1.
  CHECK_FALSE(orbit_member(ctx, geom(0, {}, "1", "1/2"), geom(0, {}, "1/2", "1/2")).has_value());

  std::mt19937_64 rng(22);
  for (int i = 0; i < 50; ++i) {
    auto gi = random_g(rng, 0, 4);
    auto xi = random_point(rng, 0);
    auto back = orbit_member(ctx, act(ctx, gi, xi), xi);
    REQUIRE(back.has_value());
    CHECK(*back == gi);
  }
  auto hctx = ActionCtx::H_on_L1();
  for (int i = 0; i < 30; ++i) {
    auto hi = random_h(rng, 3);
    auto xi = random_point(rng, 0, true);
    CHECK(*orbit_member(hctx, act(hctx, hi, xi), xi) == hi);
  }
}

TEST_CASE("density_witness examples") {
  auto ctx = ActionCtx::H_on_L1();
  auto x = geom(0, {}, "1/2", "1/2");
  auto y = geom(0, {}, "1/3", "1/3");
  for (Index N = 0; N < 4; ++N) CHECK(density_witness(ctx, x, x, N).residual.value() == 0);
  auto w1 = density_witness(ctx, x, y, 1);
  CHECK(w1.residual.value() == q("7/36"));
  CHECK(w1.h.at(0) == R("2/3"));
  CHECK(w1.h.at(1) == R("4/9"));
  CHECK(w1.h.at(2) == R("1"));
  auto w2 = density_witness(ctx, x, y, 2);
  CHECK(w2.residual.value() == q("23/216"));
  CHECK(w2.residual.value() < w1.residual.value());
  // Independent oracle: the truncated sum plus a bound on what is left.
  Rational partial = brute_abs_diff_sum(x, y, 2, 200);
  CHECK(partial <= q("7/36"));
  CHECK(q("7/36") - partial < pow(Rational(1, 2), 200));
}

TEST_CASE("density_witness residual matches the acted distance") {
  std::mt19937_64 rng(23);
  auto ctx = ActionCtx::G_on_P();
  for (int i = 0; i < 60; ++i) {
    auto x = random_point(rng, 0), y = random_point(rng, 0);
    Rational prev = -1;
    for (Index N = 0; N < 6; ++N) {
      auto w = density_witness(ctx, x, y, N);
      CHECK(w.residual.value() == l1_dist(act(ctx, w.h, x), y).value());
      if (prev >= 0) CHECK(w.residual.value() <= prev);
      prev = w.residual.value();
    }
  }
  auto hctx = ActionCtx::H_on_L1();
  for (int i = 0; i < 20; ++i) {
    auto x = random_point(rng, 0, true), y = random_point(rng, 0, true);
    auto w = density_witness(hctx, x, y, 3);
    CHECK(overlaps(w.residual, l1_dist(act(hctx, w.h, x), y)));
  }
}

TEST_CASE("meager_member examples") {
  auto x = geom(0, {}, "1/2", "1/2");
  MeagerSetParams p{x};
  CHECK(meager_member(p, x).member);
  CHECK(*meager_member(p, x).least_m == 0);
  CHECK_FALSE(meager_member(p, scaled(R("2"), x)).member);
  auto ctx = ActionCtx::H_on_L1();
  auto y = act(ctx, gelem(0, {"5", "1/9", "7/5"}, GroupDomain::NonzeroComplex), x);
  auto v = meager_member(p, y);
  CHECK(v.member);
  CHECK(*v.least_m == 1);
  CHECK_FALSE(v.in_piece);
  p.m = 1;
  CHECK(meager_member(p, y).in_piece);

  // Smaller geometric ratio: y/x -> 0. Larger: y/x grows.
  CHECK(meager_member(p, geom(0, {}, "1/3", "1/3")).member);
  CHECK_FALSE(meager_member(p, geom(0, {}, "1/3", "3/4")).member);

  MeagerSetParams bad{x, Rational(1)};
  CHECK_THROWS_AS(meager_member(bad, x), Error);
  try {
    meager_member(bad, x);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Invariant);
  }
}

TEST_CASE("meager_member least m against a scan") {
  std::mt19937_64 rng(24);
  for (int i = 0; i < 100; ++i) {
    auto x = random_point(rng, 0), y = random_point(rng, 0);
    MeagerSetParams p{x, random_positive(rng) + 1};
    auto v = meager_member(p, y);
    Index far = std::max(x.tail_start(), y.tail_start()) + 300;
    if (v.member) {
      auto last = brute_last_violation(y, x, p.ratio_bound, 0, far);
      CHECK(*v.least_m == (last ? *last + 1 : 0));
    } else {
      // A violation persists far out.
      CHECK(brute_last_violation(y, x, p.ratio_bound, far - 5, far).has_value());
    }
  }
}

TEST_CASE("H . x lies in M") {
  std::mt19937_64 rng(25);
  auto ctx = ActionCtx::H_on_L1();
  for (int i = 0; i < 50; ++i) {
    auto x = random_point(rng, 0, true);
    MeagerSetParams p{x};
    CHECK(meager_member(p, act(ctx, random_h(rng, 4), x)).member);
  }
}

TEST_CASE("meager_escape examples") {
  auto x = geom(0, {}, "1/2", "1/2");
  MeagerSetParams p{x};
  auto z = scaled(R("2"), x);
  auto e = meager_escape(p, z, 3);
  CHECK(e.z_n == z);
  CHECK(e.residual.value() == 0);
  CHECK_FALSE(meager_member(p, z).member);

  auto z2 = geom(0, {}, "1/3", "1/3");
  auto e0 = meager_escape(p, z2, 0);
  CHECK(e0.residual.value() == q("5/6"));
  CHECK(e0.z_n.entry(0) == R("1/3"));
  CHECK(e0.z_n.entry(1) == R("1/2"));
  Rational partial = brute_abs_diff_sum(e0.z_n, z2, 1, 200);
  CHECK(q("5/6") - partial < pow(Rational(1, 2), 190));
  Rational prev = e0.residual.value();
  for (Index N = 1; N < 8; ++N) {
    auto en = meager_escape(p, z2, N);
    CHECK(en.residual.value() <= prev);
    CHECK_FALSE(en.verdict.member);
    prev = en.residual.value();
  }
}

TEST_CASE("meager_escape always leaves M") {
  std::mt19937_64 rng(26);
  for (int i = 0; i < 60; ++i) {
    bool cx = i % 2 == 1;
    auto x = random_point(rng, 0, cx), z = random_point(rng, 0, cx);
    MeagerSetParams p{x, random_positive(rng) + 1};
    for (Index N = 0; N < 4; ++N) {
      auto e = meager_escape(p, z, N);
      CHECK_FALSE(meager_member(p, e.z_n).member);
      for (Index n = 0; n <= N; ++n) CHECK(e.z_n.entry(n) == z.entry(n));
    }
  }
  CHECK(escape_factor(q("3/2")) == 2);
  CHECK(escape_factor(q("5")) == 10);
}

TEST_CASE("joint continuity chain") {
  std::mt19937_64 rng(27);
  auto ctx = ActionCtx::G_on_P();
  for (int i = 0; i < 60; ++i) {
    auto h = random_g(rng, 0, 3), hk = random_g(rng, 0, 3);
    auto x = random_point(rng, 0), xk = random_point(rng, 0);
    auto v = check_joint_continuity(ctx, hk, xk, h, x);
    CHECK(v.holds);
    CHECK(v.method == "exact");
  }
  auto hctx = ActionCtx::H_on_L1();
  for (int i = 0; i < 30; ++i) {
    auto h = random_h(rng, 3), hk = random_h(rng, 2);
    auto x = random_point(rng, 0, true), xk = random_point(rng, 0, true);
    CHECK(check_joint_continuity(hctx, hk, xk, h, x).holds);
  }
  // h_k = h = identity makes both sides equal.
  auto x = geom(0, {}, "1/2", "1/2"), xk = geom(0, {"1"}, "1/3", "1/3");
  auto e = group_identity(ctx.group);
  auto v = check_joint_continuity(ctx, e, xk, e, x);
  CHECK(v.holds);
  CHECK(v.lhs.value() == v.rhs.value());
}
