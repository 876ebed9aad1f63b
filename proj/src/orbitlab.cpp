#include "polact/orbitlab.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <deque>
#include <map>
#include <sstream>
#include <unordered_map>

#include "polact/error.hpp"

namespace polact {

void LocalOrbitParams::validate() const {
  require(center.mode() == ScalarMode::Float && center.base() == 0 && center.positive() && center.summable(),
          ErrorCode::InvalidArgument, "orbit center must be a positive summable float sequence with base 0");
  require(dims >= 1, ErrorCode::InvalidArgument, "need at least one active coordinate");
  require(u_radius > 0 && v_radius > 0, ErrorCode::InvalidArgument, "radii must be positive");
  require(delta > 0 && delta <= v_radius && delta < 1, ErrorCode::InvalidArgument, "need 0 < delta <= V radius");
  require(eps > 0, ErrorCode::InvalidArgument, "need eps > 0");
  require(levels >= 1, ErrorCode::InvalidArgument, "need at least one ladder level");
  for (double f : factors) require(f > 0 && f != 1, ErrorCode::InvalidArgument, "move factors must be positive and not 1");
}

namespace {

GroupElement move_element(std::size_t dims, std::size_t coord, bool global, const Rational& f) {
  std::vector<Scalar> prefix;
  if (global) {
    prefix.assign(dims, Scalar(f));
  } else {
    prefix.assign(coord + 1, Scalar(Rational(1)));
    prefix[coord] = Scalar(f);
  }
  return GroupElement::from_prefix(GroupDomain::PositiveReal, 0, std::move(prefix));
}

std::vector<double> center_coords(const LocalOrbitParams& p) {
  std::vector<double> x;
  for (std::size_t i = 0; i < p.dims; ++i) x.push_back(p.center.entry(i).float_value());
  return x;
}

struct KeyHash {
  std::size_t operator()(const std::vector<long>& k) const {
    std::size_t h = 1469598103934665603ULL;
    for (long v : k) h = (h ^ static_cast<std::size_t>(v)) * 1099511628211ULL;
    return h;
  }
};

}  // namespace

std::vector<Move> move_set(const LocalOrbitParams& p) {
  p.validate();
  std::vector<Rational> factors;
  if (!p.factors.empty()) {
    for (double f : p.factors) {
      Rational r = from_double(f);
      factors.push_back(r);
      factors.push_back(1 / r);
    }
  } else {
    Rational d = from_double(p.delta);
    for (std::size_t j = 0; j < p.levels; ++j) {
      factors.push_back(1 + d);
      factors.push_back(1 / (1 + d));
      factors.push_back(1 - d);
      factors.push_back(1 / (1 - d));
      d /= 2;
    }
  }
  Rational vr = from_double(p.v_radius);
  std::vector<Move> moves;
  std::size_t coords = p.global_moves ? 1 : p.dims;
  for (std::size_t i = 0; i < coords; ++i) {
    for (const auto& f : factors) {
      if (cstar_dist(Scalar(f), Scalar(Rational(1))).value() >= vr) continue;
      moves.push_back({i, f, f.get_d(), move_element(p.dims, i, p.global_moves, f)});
    }
  }
  require(!moves.empty(), ErrorCode::InvalidArgument, "no move fits inside the V ball");
  return moves;
}

std::vector<long> grid_key(const std::vector<double>& coords, double eps) {
  std::vector<long> k;
  double cell = eps / 2;
  for (double c : coords) k.push_back(static_cast<long>(std::floor(std::log(c) / cell)));
  return k;
}

double l1_to_center(const std::vector<double>& y, const std::vector<double>& x) {
  double s = 0;
  for (std::size_t i = 0; i < y.size(); ++i) s += std::abs(y[i] - x[i]);
  return s;
}

std::vector<int> OrbitReport::witness(std::size_t i) const {
  std::vector<int> path;
  for (long j = static_cast<long>(i); points[j].parent >= 0; j = points[j].parent) path.push_back(points[j].move);
  std::reverse(path.begin(), path.end());
  return path;
}

std::vector<std::vector<long>> OrbitReport::keys() const {
  std::vector<std::vector<long>> k;
  for (const auto& pt : points) k.push_back(pt.key);
  std::sort(k.begin(), k.end());
  return k;
}

OrbitReport explore(const LocalOrbitParams& p) {
  OrbitReport r;
  r.moves = move_set(p);
  auto x = center_coords(p);
  std::unordered_map<std::vector<long>, std::size_t, KeyHash> seen;
  r.points.push_back({grid_key(x, p.eps), x, -1, -1, 0});
  seen.emplace(r.points[0].key, 0);
  std::deque<std::size_t> frontier{0};
  while (!frontier.empty()) {
    if (r.expansions >= p.budget) {
      r.budget_exhausted = true;
      return r;
    }
    std::size_t cur = frontier.front();
    frontier.pop_front();
    ++r.expansions;
    for (std::size_t m = 0; m < r.moves.size(); ++m) {
      const Move& mv = r.moves[m];
      std::vector<double> y = r.points[cur].coords;
      if (p.global_moves) {
        for (auto& c : y) c *= mv.value;
      } else {
        y[mv.coord] *= mv.value;
      }
      if (l1_to_center(y, x) >= p.u_radius) continue;
      auto key = grid_key(y, p.eps);
      if (seen.count(key)) continue;
      seen.emplace(key, r.points.size());
      r.points.push_back({std::move(key), std::move(y), static_cast<long>(cur), static_cast<int>(m),
                          r.points[cur].depth + 1});
      frontier.push_back(r.points.size() - 1);
    }
  }
  r.frontier_exhausted = true;
  return r;
}

DensityResult density_probe(const LocalOrbitParams& p, const OrbitReport& r, double u_prime, double eps) {
  require(u_prime <= p.u_radius, ErrorCode::InvalidArgument, "U' must lie inside U");
  require(eps > 0, ErrorCode::InvalidArgument, "need eps > 0");
  auto x = center_coords(p);
  std::size_t n = x.size();
  // Bucket reached points by their linear eps-cell.
  std::unordered_map<std::vector<long>, std::vector<std::size_t>, KeyHash> buckets;
  for (std::size_t i = 0; i < r.points.size(); ++i) {
    std::vector<long> b;
    for (double c : r.points[i].coords) b.push_back(static_cast<long>(std::floor(c / eps)));
    buckets[b].push_back(i);
  }
  long kmax = static_cast<long>(std::floor(u_prime / eps + 1e-12));
  DensityResult out;
  std::vector<long> k(n, -kmax);
  for (;;) {
    long norm = 0;
    for (long v : k) norm += std::labs(v);
    std::vector<double> g(n);
    bool positive = true;
    for (std::size_t i = 0; i < n; ++i) {
      g[i] = x[i] + eps * static_cast<double>(k[i]);
      positive = positive && g[i] > 0;
    }
    if (norm <= kmax && positive) {
      ++out.grid_points;
      bool hit = false;
      std::vector<long> base(n), off(n, -1);
      for (std::size_t i = 0; i < n; ++i) base[i] = static_cast<long>(std::floor(g[i] / eps));
      // Points within l1 distance eps sit in adjacent buckets.
      while (!hit) {
        std::vector<long> b(n);
        for (std::size_t i = 0; i < n; ++i) b[i] = base[i] + off[i];
        auto it = buckets.find(b);
        if (it != buckets.end()) {
          for (std::size_t j : it->second) {
            if (l1_to_center(r.points[j].coords, g) <= eps) {
              hit = true;
              break;
            }
          }
        }
        std::size_t i = 0;
        while (i < n && off[i] == 1) off[i++] = -1;
        if (i == n) break;
        ++off[i];
      }
      if (hit) ++out.covered;
    }
    std::size_t i = 0;
    while (i < n && k[i] == kmax) k[i++] = -kmax;
    if (i == n) break;
    ++k[i];
  }
  require(out.grid_points > 0, ErrorCode::InvalidArgument, "density probe grid is empty");
  out.fraction = static_cast<double>(out.covered) / static_cast<double>(out.grid_points);
  return out;
}

namespace {

double deviation(const TailedSeq& y, const std::vector<double>& coords) {
  double d = 0;
  for (std::size_t i = 0; i < coords.size(); ++i) d = std::max(d, std::abs(y.entry(i).float_value() - coords[i]));
  return d;
}

bool inside(const TailedSeq& y, const std::vector<double>& x, double u) {
  std::vector<double> c;
  for (std::size_t i = 0; i < x.size(); ++i) c.push_back(y.entry(i).float_value());
  return l1_to_center(c, x) < u;
}

}  // namespace

ReplayResult replay_witnesses(const LocalOrbitParams& p, const OrbitReport& r) {
  // Parents are discovered before children, so replaying along tree edges in
  // discovery order replays every witness path from the center.
  auto ctx = ActionCtx::G_on_P();
  auto x = center_coords(p);
  std::vector<GroupElement> fm;
  for (const auto& m : r.moves) fm.emplace_back(m.element.seq().to_mode(ScalarMode::Float), GroupDomain::PositiveReal);
  std::vector<TailedSeq> replayed;
  replayed.reserve(r.points.size());
  ReplayResult out;
  for (std::size_t i = 0; i < r.points.size(); ++i) {
    const auto& pt = r.points[i];
    replayed.push_back(pt.parent < 0 ? p.center : act(ctx, fm[pt.move], replayed[pt.parent]));
    out.max_deviation = std::max(out.max_deviation, deviation(replayed.back(), pt.coords));
    out.all_inside = out.all_inside && inside(replayed.back(), x, p.u_radius);
    ++out.checked;
  }
  return out;
}

ReplayResult replay_witness(const LocalOrbitParams& p, const OrbitReport& r, std::size_t i) {
  auto ctx = ActionCtx::G_on_P();
  auto x = center_coords(p);
  TailedSeq y = p.center;
  ReplayResult out;
  for (int m : r.witness(i)) {
    GroupElement g(r.moves[m].element.seq().to_mode(ScalarMode::Float), GroupDomain::PositiveReal);
    y = act(ctx, g, y);
    out.all_inside = out.all_inside && inside(y, x, p.u_radius);
  }
  out.max_deviation = deviation(y, r.points[i].coords);
  out.checked = 1;
  return out;
}

std::vector<ProbeRow> turbulence_probe(const LocalOrbitParams& base, const std::vector<ProbeSpec>& schedule) {
  require(!schedule.empty(), ErrorCode::InvalidArgument, "empty probe schedule");
  std::vector<ProbeRow> rows;
  for (const auto& s : schedule) {
    LocalOrbitParams p = base;
    p.dims = s.dims;
    p.u_radius = s.u_radius;
    p.v_radius = s.v_radius;
    p.budget = s.budget;
    p.global_moves = false;
    auto treat = explore(p);
    auto dt = density_probe(p, treat, s.u_prime, p.eps);
    p.global_moves = true;
    auto ctrl = explore(p);
    auto dc = density_probe(p, ctrl, s.u_prime, p.eps);
    rows.push_back({s.dims, s.u_radius, s.v_radius, s.u_prime, p.delta, p.eps, s.budget, treat.points.size(),
                    ctrl.points.size(), dt.fraction, dc.fraction, treat.budget_exhausted,
                    ctrl.budget_exhausted});
  }
  return rows;
}

namespace {

// Shortest text that reads back to the same double.
std::string fmt(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace

std::string probe_csv(const std::vector<ProbeRow>& rows) {
  std::ostringstream os;
  os << "dims,u_radius,v_radius,u_prime,delta,eps,budget,reached,fraction,budget_exhausted,"
        "control_reached,control_fraction,control_budget_exhausted\n";
  for (const auto& r : rows) {
    os << r.dims << ',' << fmt(r.u_radius) << ',' << fmt(r.v_radius) << ',' << fmt(r.u_prime) << ','
       << fmt(r.delta) << ',' << fmt(r.eps) << ',' << r.budget << ',' << r.reached << ',' << fmt(r.fraction) << ','
       << (r.budget_exhausted ? "true" : "false") << ',' << r.control_reached << ',' << fmt(r.control_fraction) << ','
       << (r.control_budget_exhausted ? "true" : "false") << '\n';
  }
  return os.str();
}

std::string report_jsonl(const OrbitReport& r) {
  std::vector<std::size_t> order(r.points.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return r.points[a].key < r.points[b].key; });
  std::string out;
  for (std::size_t i : order) {
    auto path = r.witness(i);
    Json line{{"key", r.points[i].key}, {"point", r.points[i].coords}, {"length", path.size()}, {"path", path}};
    out += line.dump() + "\n";
  }
  return out;
}

}  // namespace polact
