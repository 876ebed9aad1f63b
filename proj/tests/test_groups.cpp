#include <random>

#include "doctest.h"
#include "polact/error.hpp"
#include "polact/groups.hpp"
#include "support.hpp"

using namespace testing_support;

namespace {

GroupElement complex_elem(std::vector<Scalar> p) {
  return GroupElement::from_prefix(GroupDomain::NonzeroComplex, 0, std::move(p));
}

GroupElement float_elem(std::vector<double> vs) {
  std::vector<Scalar> p;
  for (double v : vs) p.push_back(Scalar::floating(v));
  return GroupElement::from_prefix(GroupDomain::PositiveReal, 0, std::move(p));
}

}  // namespace

TEST_CASE("group_mul examples") {
  auto G = GroupCtx::G();
  CHECK(group_mul(G, gelem(0, {"2"}), gelem(0, {"1/2"})) == group_identity(G));
  CHECK(group_mul(G, gelem(0, {"3/2"}), gelem(0, {"1", "2"})) == gelem(0, {"3/2", "2"}));
  auto prod = group_mul(G, gelem(0, {"3/2"}), gelem(0, {"1", "2"}));
  CHECK(prod.seq().tail().kind() == TailKind::Constant);
  CHECK(prod.seq().tail().coef().is_one());

  std::mt19937_64 rng(11);
  for (int i = 0; i < 50; ++i) {
    auto a = random_g(rng, 0, 3), b = random_g(rng, 0, 3);
    CHECK(group_mul(G, a, b) == group_mul(G, b, a));
  }
}

TEST_CASE("group_mul rejects a context mismatch") {
  CHECK_THROWS_AS(group_mul(GroupCtx::G(), gelem(0, {"2"}), gelem(1, {"2"})), Error);
  CHECK_THROWS_AS(group_mul(GroupCtx::Gstar(), gelem(0, {"2"}), gelem(0, {"2"})), Error);
  CHECK_THROWS_AS(group_inv(GroupCtx::H(), gelem(0, {"2"})), Error);
}

TEST_CASE("group_inv examples") {
  auto G = GroupCtx::G();
  CHECK(group_inv(G, group_identity(G)) == group_identity(G));
  CHECK(group_inv(G, gelem(0, {"2"})) == gelem(0, {"1/2"}));
  auto H = GroupCtx::H();
  auto i = complex_elem({C("0", "1")});
  CHECK(group_inv(H, i) == complex_elem({C("0", "-1")}));
}

TEST_CASE("group axioms on random elements") {
  std::mt19937_64 rng(12);
  for (auto ctx : {GroupCtx::G(), GroupCtx::Gstar()}) {
    for (int i = 0; i < 40; ++i) {
      auto a = random_g(rng, ctx.base, 1 + i % 4), b = random_g(rng, ctx.base, 3), c = random_g(rng, ctx.base, 2);
      auto e = group_identity(ctx);
      CHECK(group_mul(ctx, group_mul(ctx, a, b), c) == group_mul(ctx, a, group_mul(ctx, b, c)));
      CHECK(group_mul(ctx, a, e) == a);
      CHECK(group_mul(ctx, a, group_inv(ctx, a)) == e);
      CHECK(group_mul(ctx, a, b) == group_mul(ctx, b, a));
    }
  }
  auto H = GroupCtx::H();
  for (int i = 0; i < 40; ++i) {
    auto a = random_h(rng, 3), b = random_h(rng, 2), c = random_h(rng, 4);
    auto e = group_identity(H, ScalarMode::ExactComplex);
    CHECK(group_mul(H, group_mul(H, a, b), c) == group_mul(H, a, group_mul(H, b, c)));
    CHECK(group_mul(H, a, group_inv(H, a)) == e);
    CHECK(group_mul(H, a, b) == group_mul(H, b, a));
  }
}

TEST_CASE("inversion is a rho isometry") {
  std::mt19937_64 rng(13);
  auto G = GroupCtx::G();
  for (int i = 0; i < 40; ++i) {
    auto f = random_g(rng, 0, 3), g = random_g(rng, 0, 4);
    CHECK(rho_sup(group_inv(G, f), group_inv(G, g)).value() == rho_sup(f, g).value());
  }
  auto H = GroupCtx::H();
  for (int i = 0; i < 40; ++i) {
    auto f = random_h(rng, 3), g = random_h(rng, 3);
    auto fi = group_inv(H, f), gi = group_inv(H, g);
    // d(1/a, 1/b) has the same two terms as d(a, b), swapped.
    for (Index n = 0; n < 3; ++n) {
      auto t = cstar_terms(f.at(n), g.at(n));
      auto u = cstar_terms(fi.at(n), gi.at(n));
      CHECK(t.diff2 == u.inv_diff2);
      CHECK(t.inv_diff2 == u.diff2);
    }
    CHECK(overlaps(rho_sup(fi, gi), rho_sup(f, g)));
  }
}

TEST_CASE("dense_approx") {
  auto G = GroupCtx::G();
  auto h = gelem(0, {"3/7", "5"});
  CHECK(in_dense_class(h));
  CHECK(dense_approx(G, h, q("1/100")) == h);

  auto root2 = float_elem({1.4142135623730951});
  auto a = dense_approx(G, root2, q("1/100"));
  CHECK(in_dense_class(a));
  CHECK(a.mode() == ScalarMode::ExactReal);
  // D = 200: 1.41421... * 200 = 282.84..., rounds to 283/200.
  CHECK(a.at(0) == R("283/200"));
  Rational v = from_double(1.4142135623730951);
  Rational d = abs(Rational(283, 200) - v) + abs(Rational(200, 283) - 1 / v);
  CHECK(d < q("1/100"));

  // An entry close to 1 at a coarse grid snaps to the identity.
  auto near_one = float_elem({1.001});
  CHECK(dense_approx(G, near_one, q("1/2")) == group_identity(G));

  // Small entries force a finer grid than ceil(2/eps).
  auto tiny = float_elem({0.013, 77.25, 1e-3});
  Rational eps = q("1/50");
  auto t = dense_approx(G, tiny, eps);
  GroupElement exact_tiny(tiny.seq().to_mode(ScalarMode::ExactReal), GroupDomain::PositiveReal);
  CHECK(rho_sup(t, exact_tiny).value() < eps);
  for (Index n = 0; n < 3; ++n) CHECK(t.at(n).real_part() > 0);

  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  for (int i = 0; i < 100; ++i) {
    std::vector<double> vs;
    for (int k = 0; k < 4; ++k) vs.push_back(std::exp(u(rng)));
    auto fh = float_elem(vs);
    Rational e(1, 1 + i);
    auto out = dense_approx(G, fh, e);
    GroupElement ex(fh.seq().to_mode(ScalarMode::ExactReal), GroupDomain::PositiveReal);
    CHECK(in_dense_class(out));
    CHECK(rho_sup(out, ex).value() < e);
  }
}

TEST_CASE("dense_approx ties round toward one") {
  auto G = GroupCtx::G();
  // eps = 2 gives D = 1: 1.5 sits between 1 and 2 and goes to 1; 0.5 between 0
  // and 1 goes to 1.
  auto h = float_elem({1.5, 0.5});
  auto out = dense_approx(G, h, q("5"));
  CHECK(out.at(0) == R("1"));
  CHECK(out.at(1) == R("1"));
}

TEST_CASE("verify_translation_bound examples") {
  auto G = GroupCtx::G();
  auto f = gelem(0, {"2"}), g = group_identity(G), h = gelem(0, {"1/2"});
  auto v = verify_translation_bound(G, f, g, h);
  CHECK(v.holds);
  CHECK(v.lhs.value() == q("3/2"));
  CHECK(v.rhs.value() == q("3"));

  auto w = verify_translation_bound(G, f, gelem(0, {"1", "3"}), group_identity(G));
  CHECK(w.holds);
  CHECK(w.lhs.value() == w.rhs.value());
  CHECK(w.lhs.value() == rho_sup(f, gelem(0, {"1", "3"})).value());
}

TEST_CASE("verify_translation_bound random triples") {
  std::mt19937_64 rng(15);
  auto G = GroupCtx::G();
  for (int i = 0; i < 100; ++i) {
    auto v = verify_translation_bound(G, random_g(rng, 0, 3), random_g(rng, 0, 2), random_g(rng, 0, 4));
    CHECK(v.holds);
    CHECK(v.method == "exact");
  }
  auto H = GroupCtx::H();
  for (int i = 0; i < 100; ++i) {
    auto v = verify_translation_bound(H, random_h(rng, 3), random_h(rng, 2), random_h(rng, 4));
    CHECK(v.holds);
  }
  // Identity translation in H: both sides coincide and the enclosures overlap.
  auto f = random_h(rng, 2), g = random_h(rng, 2);
  auto v = verify_translation_bound(H, f, g, group_identity(H, ScalarMode::ExactComplex));
  CHECK(v.holds);
}

TEST_CASE("G embeds in H") {
  std::mt19937_64 rng(16);
  auto G = GroupCtx::G();
  auto H = GroupCtx::H();
  for (int i = 0; i < 40; ++i) {
    auto a = random_g(rng, 0, 3), b = random_g(rng, 0, 2);
    CHECK(embed_in_h(group_mul(G, a, b)) == group_mul(H, embed_in_h(a), embed_in_h(b)));
    CHECK(embed_in_h(group_inv(G, a)) == group_inv(H, embed_in_h(a)));
    CHECK(rho_sup(embed_in_h(a), embed_in_h(b)).value() == rho_sup(a, b).value());
  }
}
