#include <doctest.h>

#include "polact/error.hpp"
#include "polact/serialize.hpp"
#include "support.hpp"

using namespace polact;
using namespace testing_support;

TEST_CASE("entry reads prefix and tail") {
  CHECK(cons(0, {"2"}, "1").entry(0) == R("2"));
  CHECK(geom(0, {}, "1/2", "1/2").entry(2) == R("1/8"));
  CHECK(cons(0, {"3/2"}, "1").entry(7) == R("1"));
  auto s = cons(1, {"3/2"}, "1");
  CHECK_THROWS_AS(s.entry(0), Error);
}

TEST_CASE("tail model invariants") {
  CHECK_THROWS_AS(TailModel::geometric(R("1"), R("0"), 0), Error);
  CHECK_THROWS_AS(TailModel::geometric(R("1"), R("1"), 0), Error);
  CHECK_THROWS_AS(TailModel::geometric(R("1"), R("-3/2"), 0), Error);
  CHECK_THROWS_AS(TailModel::constant(R("0"), 0), Error);
  CHECK(TailModel::geometric(R("1"), R("-1/2"), 0).kind() == TailKind::Geometric);
  CHECK(TailModel::reciprocal_geometric(R("1"), R("1/2"), 0).kind() == TailKind::ReciprocalGeometric);
  CHECK(TailModel::power(R("1"), R("-1"), 0).kind() == TailKind::Unimodular);
}

TEST_CASE("pointwise_mul closes the tail class") {
  auto x = geom(0, {}, "1/2", "1/2");
  auto g = cons(0, {"2"}, "1");
  auto gx = pointwise_mul(g, x);
  CHECK(gx == geom(0, {"1"}, "1/4", "1/2"));
  CHECK(gx.tail().kind() == TailKind::Geometric);

  auto id = cons(0, {}, "1");
  CHECK(pointwise_mul(id, x) == x);

  auto a = geom(0, {}, "1/2", "1/2");
  auto b = geom(0, {}, "1/3", "1/3");
  auto ab = pointwise_mul(a, b);
  CHECK(ab == geom(0, {}, "1/6", "1/6"));
  for (Index n = 0; n < 5; ++n) CHECK(ab.entry(n) == a.entry(n) * b.entry(n));

  CHECK_THROWS_AS(pointwise_mul(a, geom(1, {}, "1/2", "1/2")), Error);
  CHECK_THROWS_AS(pointwise_mul(a, a.to_mode(ScalarMode::ExactComplex)), Error);
}

TEST_CASE("pointwise_inv") {
  CHECK(pointwise_inv(cons(0, {"2"}, "1")) == cons(0, {"1/2"}, "1"));
  auto x = cons(0, {"3", "1/4"}, "1");
  CHECK(pointwise_inv(pointwise_inv(x)) == x);

  auto g = geom(0, {}, "1/2", "1/2");
  auto inv = pointwise_inv(g);
  CHECK(inv.tail().kind() == TailKind::ReciprocalGeometric);
  CHECK(inv.entry(3) == R("16"));
  // a non-summable inverse is not an l1 point
  CHECK_THROWS_AS(l1_norm(inv), Error);
  CHECK(pointwise_mul(inv, g) == cons(0, {}, "1"));
}

TEST_CASE("l1_norm closed form against partial sums") {
  auto x = geom(0, {}, "1/2", "1/2");
  CHECK(l1_norm(x).value() == 1);
  // oracle: 200 explicit terms are within 2^-200 of the total
  Rational partial = brute_abs_sum(x, 0, 200);
  CHECK(partial < 1);
  CHECK(1 - partial < Rational(1, 1000000));

  auto y = geom(0, {"1"}, "1/4", "1/2");
  CHECK(l1_norm(y).value() == q("3/2"));
  CHECK(l1_norm(scaled(R("2"), y)).value() == 2 * l1_norm(y).value());
  CHECK(l1_norm(geom(0, {"-1"}, "-1/4", "-1/2")).value() == q("3/2"));
  CHECK_THROWS_AS(l1_norm(cons(0, {}, "1")), Error);
}

TEST_CASE("cstar_dist") {
  CHECK(cstar_dist(R("2"), R("1")).value() == q("3/2"));
  CHECK(cstar_dist(R("5/7"), R("5/7")).value() == 0);
  CHECK(cstar_dist(R("1/2"), R("1")).value() == q("3/2"));
  CHECK_THROWS_AS(cstar_dist(R("0"), R("1")), Error);

  // d(i, 1) = |i - 1| + |-i - 1| = 2 sqrt 2
  Enclosure d = cstar_dist(C("0", "1"), C("1", "0"));
  CHECK(d.width() <= default_tolerance());
  CHECK(d.lo * d.lo <= 8);
  CHECK(d.hi * d.hi >= 8);
}

TEST_CASE("rho_sup") {
  auto g = gelem(0, {"2"});
  auto id = GroupElement::identity(GroupDomain::PositiveReal, 0);
  CHECK(rho_sup(g, id).value() == q("3/2"));
  CHECK(rho_sup(g, g).value() == 0);

  std::mt19937_64 rng(11);
  for (int i = 0; i < 50; ++i) {
    auto f = random_g(rng, 0, 2), h = random_g(rng, 0, 2);
    auto fi = pointwise_inv(f.seq()), hi = pointwise_inv(h.seq());
    CHECK(rho_sup(fi, hi).value() == rho_sup(f, h).value());
  }
}

TEST_CASE("l1_dist") {
  auto x = geom(0, {}, "1/2", "1/2");
  auto y = geom(0, {"1"}, "1/4", "1/2");
  CHECK(l1_dist(x, y).value() == q("1/2"));
  CHECK(l1_dist(x, x).value() == 0);

  auto a = geom(0, {}, "1/2", "1/2");
  auto b = geom(0, {}, "1/3", "1/3");
  Rational tail = l1_dist_from(a, b, 2).value();
  CHECK(tail == q("7/36"));
  Rational partial = brute_abs_diff_sum(a, b, 2, 300);
  CHECK(partial <= tail);
  CHECK(tail - partial < Rational(1, 1000000000));
}

TEST_CASE("l1_dist exact for arbitrary real geometric tails (brute-force oracle)") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> num(-7, 7), den(2, 9);
  auto ratio = [&]() {
    for (;;) {
      Rational r(num(rng), den(rng));
      r.canonicalize();
      if (r != 0 && abs(r) < 1 && abs(r) <= Rational(7, 9)) return r;
    }
  };
  for (int i = 0; i < 200; ++i) {
    Rational c1 = random_nonzero(rng), c2 = random_nonzero(rng);
    Rational q1 = ratio(), q2 = ratio();
    if (i % 7 == 0) q2 = -q1;
    if (i % 11 == 0) q2 = q1;
    auto x = TailedSeq::geometric(0, {Scalar(random_nonzero(rng))}, Scalar(c1), Scalar(q1));
    auto y = TailedSeq::geometric(0, {}, Scalar(c2), Scalar(q2));
    Rational exact = l1_dist(x, y).value();
    // the remainder after 400 terms is at most (|c1| + |c2|) (7/9)^400 / (2/9)
    Rational partial = brute_abs_diff_sum(x, y, 0, 400);
    Rational bound = (abs(c1) + abs(c2) + abs(x.entry(0).real_part())) * pow(Rational(7, 9), 399) * 5;
    CHECK(partial <= exact);
    CHECK(exact - partial <= bound);
  }
}

TEST_CASE("complex l1 quantities are certified enclosures") {
  auto x = TailedSeq::geometric(0, {C("1", "1")}, C("0", "1/2"), C("1/2", "0"));
  auto y = TailedSeq::geometric(0, {C("1", "0")}, C("1/2", "0"), C("0", "1/3"));
  Enclosure n = l1_norm(x);
  CHECK(n.width() <= default_tolerance());
  // |1+i| + (1/2)/(1/2) = sqrt 2 + 1
  CHECK((n.lo - 1) * (n.lo - 1) <= 2);
  CHECK((n.hi - 1) * (n.hi - 1) >= 2);

  Enclosure d = l1_dist(x, y, Rational(1, 1000000));
  CHECK(d.width() <= Rational(1, 1000000));
  // oracle: floating partial sum of |x - y| over 60 terms
  double partial = 0;
  for (Index k = 0; k < 60; ++k) {
    auto diff = x.entry(k) - y.entry(k);
    partial += std::sqrt(diff.abs2().get_d());
  }
  CHECK(d.lo.get_d() <= partial + 1e-9);
  CHECK(d.hi.get_d() >= partial - 1e-9);
}

TEST_CASE("reindex") {
  auto x = geom(0, {"1/2"}, "1/4", "1/2");
  auto y = reindex(x, 1);
  CHECK(y.base() == 1);
  CHECK(y.entry(1) == R("1/2"));
  CHECK(y.tail().kind() == TailKind::Geometric);
  CHECK(reindex(y, 0) == x);
  auto g = geom(0, {}, "1/2", "1/2");
  CHECK(l1_norm(reindex(g, 1)).value() == l1_norm(g).value());
  CHECK(l1_norm(g).value() == 1);
}

TEST_CASE("metric and algebra properties on random instances") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 100; ++i) {
    Scalar a(random_nonzero(rng)), b(random_nonzero(rng)), c(random_nonzero(rng));
    Rational ab = cstar_dist(a, b).value(), ba = cstar_dist(b, a).value();
    CHECK(ab == ba);
    CHECK(ab <= cstar_dist(a, c).value() + cstar_dist(c, b).value());
    CHECK((ab == 0) == (a == b));
    CHECK(cstar_dist(a.inverse(), b.inverse()).value() == ab);

    auto f = random_g(rng, 0, 3), g = random_g(rng, 0, 2), h = random_g(rng, 0, 4);
    CHECK(pointwise_mul(pointwise_mul(f.seq(), g.seq()), h.seq()) ==
          pointwise_mul(f.seq(), pointwise_mul(g.seq(), h.seq())));
    CHECK(pointwise_mul(f.seq(), g.seq()) == pointwise_mul(g.seq(), f.seq()));
    CHECK(pointwise_mul(f.seq(), pointwise_inv(f.seq())) == cons(0, {}, "1"));

    // rho(fh, gh) <= max{sup|h|, sup 1/|h|} rho(f, g)
    Rational lhs = rho_sup(pointwise_mul(f.seq(), h.seq()), pointwise_mul(g.seq(), h.seq())).value();
    Enclosure factor = sqrt_enclosure(translation_factor2(h), default_tolerance());
    CHECK(lhs <= factor.hi * rho_sup(f, g).value());

    // ||h x||_1 <= sup|h| ||x||_1
    auto x = TailedSeq::geometric(0, {Scalar(random_positive(rng))}, Scalar(random_positive(rng)),
                                  Scalar(Rational(1, 2 + i % 5)));
    Rational hx = l1_norm(pointwise_mul(h.seq(), x)).value();
    CHECK(hx * hx <= sup_abs2(h) * l1_norm(x).value() * l1_norm(x).value());

    // l1_dist(x, y) == 0 iff x == y
    auto y = i % 3 == 0 ? x : pointwise_mul(g.seq(), x);
    CHECK((l1_dist(x, y).value() == 0) == (x == y));
  }
}

TEST_CASE("text record round trip") {
  auto x = geom(0, {"1", "1/4"}, "1/4", "1/2");
  std::string s = serialize(x);
  CHECK(s == R"({"base":0,"mode":"real","prefix":["1","1/4"],"tail":{"a":"1/4","kind":"geom","r":"1/2"}})");
  CHECK(parse_seq(s) == x);

  std::mt19937_64 rng(99);
  std::vector<TailedSeq> samples = {
      pointwise_inv(geom(1, {"3"}, "1/3", "2/3")),
      TailedSeq::geometric(0, {C("1/2", "-3/4"), C("0", "1")}, C("2", "1"), C("0", "1/2")),
      TailedSeq::geometric(0, {Scalar::floating(0.1), Scalar::floating(1.0 / 3.0)}, Scalar::floating(0.7),
                           Scalar::floating(0.3)),
      pointwise_inv(TailedSeq::geometric(0, {}, Scalar::floating(0.7), Scalar::floating(0.3))),
      TailedSeq(0, {}, TailModel::power(R("2"), R("-1"), 0)),
  };
  for (int i = 0; i < 20; ++i) {
    auto g = random_g(rng, i % 2, 3);
    samples.push_back(g.seq());
  }
  for (const auto& smp : samples) {
    std::string text = serialize(smp);
    TailedSeq back = parse_seq(text);
    CHECK(serialize(back) == text);
    CHECK(back.mode() == smp.mode());
    for (Index n = smp.base(); n < smp.base() + 6; ++n) CHECK(identical(back.entry(n), smp.entry(n)));
  }
  CHECK(Scalar::parse("1/2+3/4 i", ScalarMode::ExactComplex).to_string() == "1/2+3/4 i");
  CHECK_THROWS_AS(parse_seq("{\"base\":0}"), Error);
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
}
