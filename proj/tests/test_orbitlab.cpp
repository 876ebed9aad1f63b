#include <cmath>
#include <map>
#include <queue>
#include <set>

#include "doctest.h"
#include "polact/error.hpp"
#include "polact/orbitlab.hpp"
#include "support.hpp"

using namespace testing_support;

namespace {

TailedSeq float_center(std::vector<double> head) {
  std::vector<Scalar> p;
  for (double v : head) p.push_back(Scalar::floating(v));
  return TailedSeq::geometric(0, std::move(p), Scalar::floating(0.125), Scalar::floating(0.5));
}

LocalOrbitParams reference_params() {
  LocalOrbitParams p{float_center({0.5, 0.25})};
  p.dims = 2;
  p.delta = 0.01;
  p.u_radius = 0.2;
  p.v_radius = 0.05;
  p.eps = 0.02;
  p.budget = 100000;
  return p;
}

std::vector<std::vector<double>> sorted_coords(const OrbitReport& r) {
  std::vector<std::vector<double>> c;
  for (const auto& pt : r.points) c.push_back(pt.coords);
  std::sort(c.begin(), c.end());
  return c;
}

bool close(const std::vector<std::vector<double>>& a, const std::vector<std::vector<double>>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < a[i].size(); ++k)
      if (std::abs(a[i][k] - b[i][k]) > 1e-12) return false;
  return true;
}

// Exponent lattice: points x_i f^{j_i}, connected to j = 0 through unit steps
// inside the open l1 ball.
std::vector<std::vector<double>> lattice_oracle(const std::vector<double>& x, double f, double u) {
  std::size_t n = x.size();
  auto point = [&](const std::vector<int>& j) {
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = x[i] * std::pow(f, j[i]);
    return y;
  };
  auto in_u = [&](const std::vector<double>& y) {
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
        if (!seen.count(k) && in_u(point(k))) {
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

// Plain FIFO search over the same grid with a std::map store.
std::vector<std::vector<long>> naive_grid_bfs(const LocalOrbitParams& p, const std::vector<Move>& moves) {
  std::vector<double> x;
  for (std::size_t i = 0; i < p.dims; ++i) x.push_back(p.center.entry(i).float_value());
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

TEST_CASE("move_set") {
  LocalOrbitParams p{float_center({1.0})};
  p.dims = 1;
  p.delta = 0.01;
  p.v_radius = 0.05;
  auto moves = move_set(p);
  REQUIRE(moves.size() == 4);
  CHECK(moves[0].factor == 1 + from_double(0.01));
  CHECK(moves[1].factor == 1 / (1 + from_double(0.01)));
  auto e = GroupElement::identity(GroupDomain::PositiveReal, 0);
  for (const auto& m : moves) {
    CHECK(rho_sup(m.element, e).value() < from_double(p.v_radius));
    bool has_inverse = false;
    for (const auto& k : moves) has_inverse = has_inverse || group_mul(GroupCtx::G(), m.element, k.element) == e;
    CHECK(has_inverse);
  }
  p.dims = 3;
  p.levels = 3;
  CHECK(move_set(p).size() == 36);
  // A ladder rung too large for the V ball is dropped: d(1.04, 1) > 0.05.
  p.delta = 0.04;
  p.levels = 2;
  CHECK(move_set(p).size() == 12);
  p.delta = 0.06;
  CHECK_THROWS_AS(move_set(p), Error);
  p.v_radius = 0.05;
  p.delta = 0.05;
  p.levels = 1;
  CHECK_THROWS_AS(move_set(p), Error);
}

TEST_CASE("explore with zero budget") {
  auto p = reference_params();
  p.budget = 0;
  auto r = explore(p);
  CHECK(r.points.size() == 1);
  CHECK(r.budget_exhausted);
  auto d = density_probe(p, r, 0.01, p.eps);
  CHECK(d.grid_points == 1);
  CHECK(d.fraction == 1.0);
}

TEST_CASE("explore matches exponent enumeration in one dimension") {
  LocalOrbitParams p{float_center({1.0})};
  p.dims = 1;
  p.u_radius = 0.1;
  p.v_radius = 0.05;
  p.factors = {1.01};
  p.eps = 0.001;
  auto r = explore(p);
  CHECK(r.frontier_exhausted);
  auto oracle = lattice_oracle({1.0}, 1.01, 0.1);
  CHECK(oracle.size() == 20);  // j = -10 .. 9
  CHECK(close(sorted_coords(r), oracle));
}

TEST_CASE("explore matches exponent enumeration in two dimensions") {
  LocalOrbitParams p{float_center({0.5, 0.25})};
  p.dims = 2;
  p.u_radius = 0.05;
  p.v_radius = 0.05;
  p.factors = {1.01};
  p.eps = 0.001;
  auto r = explore(p);
  CHECK(r.frontier_exhausted);
  auto oracle = lattice_oracle({0.5, 0.25}, 1.01, 0.05);
  CHECK(oracle.size() > 50);
  CHECK(close(sorted_coords(r), oracle));
}

TEST_CASE("explore matches a naive search over the same grid") {
  for (std::size_t levels : {1, 2}) {
    for (bool global : {false, true}) {
      auto p = reference_params();
      p.levels = levels;
      p.global_moves = global;
      p.u_radius = 0.08;
      auto r = explore(p);
      CHECK(r.frontier_exhausted);
      CHECK(r.keys() == naive_grid_bfs(p, r.moves));
    }
  }
  LocalOrbitParams p1{float_center({2.0})};
  p1.dims = 1;
  p1.u_radius = 0.5;
  p1.delta = 0.03;
  p1.v_radius = 0.1;
  p1.levels = 3;
  auto r1 = explore(p1);
  CHECK(r1.keys() == naive_grid_bfs(p1, r1.moves));
}

TEST_CASE("explore is deterministic and budget monotone") {
  auto p = reference_params();
  p.u_radius = 0.1;
  auto a = explore(p), b = explore(p);
  CHECK(report_jsonl(a) == report_jsonl(b));
  std::set<std::vector<long>> prev;
  double prev_fraction = 0;
  for (std::uint64_t budget : {0, 10, 100, 1000, 10000}) {
    p.budget = budget;
    auto r = explore(p);
    auto keys = r.keys();
    std::set<std::vector<long>> now(keys.begin(), keys.end());
    CHECK(std::includes(now.begin(), now.end(), prev.begin(), prev.end()));
    double f = density_probe(p, r, 0.05, p.eps).fraction;
    CHECK(f >= prev_fraction);
    prev = now;
    prev_fraction = f;
  }
}

TEST_CASE("enlarging the move set does not shrink the reached set") {
  for (double u : {0.05, 0.1, 0.2}) {
    auto p = reference_params();
    p.u_radius = u;
    auto small = explore(p);
    p.levels = 2;
    auto large = explore(p);
    auto ks = small.keys(), kl = large.keys();
    CHECK(std::includes(kl.begin(), kl.end(), ks.begin(), ks.end()));
  }
}

TEST_CASE("witness replay") {
  auto p = reference_params();
  p.u_radius = 0.1;
  auto r = explore(p);
  auto all = replay_witnesses(p, r);
  CHECK(all.checked == r.points.size());
  CHECK(all.max_deviation <= 1e-9);
  CHECK(all.all_inside);
  for (std::size_t i = 0; i < r.points.size(); i += 97) {
    auto one = replay_witness(p, r, i);
    CHECK(one.max_deviation <= 1e-9);
    CHECK(one.all_inside);
    CHECK(r.witness(i).size() == r.points[i].depth);
  }
}

TEST_CASE("density probe") {
  auto p = reference_params();
  auto r = explore(p);
  CHECK(r.frontier_exhausted);
  auto d = density_probe(p, r, 0.05, 0.02);
  CHECK(d.grid_points == 13);
  CHECK(d.fraction >= 0.9);
  p.global_moves = true;
  auto c = explore(p);
  auto dc = density_probe(p, c, 0.05, 0.02);
  CHECK(dc.fraction < d.fraction);
  CHECK_THROWS_AS(density_probe(p, c, 0.5, 0.02), Error);
}

TEST_CASE("turbulence probe") {
  auto base = reference_params();
  std::vector<ProbeSpec> schedule{{2, 0.2, 0.05, 0.05, 100000}, {2, 0.2, 0.05, 0.05, 100000}, {1, 0.1, 0.05, 0.05, 1000}, {2, 0.2, 0.05, 0.05, 10}};
  auto rows = turbulence_probe(base, schedule);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].fraction == rows[1].fraction);
  CHECK(rows[0].reached == rows[1].reached);
  CHECK(rows[0].control_fraction < rows[0].fraction);
  CHECK_FALSE(rows[0].budget_exhausted);
  CHECK_FALSE(rows[2].budget_exhausted);
  CHECK(rows[3].budget_exhausted);
  auto csv = probe_csv(rows);
  CHECK(csv.rfind("dims,u_radius", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);
}
