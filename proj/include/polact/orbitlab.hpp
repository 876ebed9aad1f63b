#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "polact/actions.hpp"
#include "polact/serialize.hpp"

namespace polact {

// Discretized (U, V)-local orbit of G acting on P, moving only the first n
// coordinates of a float-mode center.
struct LocalOrbitParams {
  explicit LocalOrbitParams(TailedSeq c) : center(std::move(c)) {}

  TailedSeq center;
  std::size_t dims = 2;
  double u_radius = 0.2;    // l1 ball around the center
  double v_radius = 0.05;   // rho ball around the identity
  double delta = 0.01;      // largest move size
  std::size_t levels = 1;   // ladder delta, delta/2, ...
  double eps = 0.02;        // net resolution; dedup cells are eps/2 in log space
  std::uint64_t budget = 100000;  // number of expansions
  std::uint64_t seed = 0;
  // When nonempty, moves are x f and x 1/f for these factors instead of the ladder.
  std::vector<double> factors;
  // Negative control: every move scales all n coordinates at once.
  bool global_moves = false;

  void validate() const;
};

struct Move {
  std::size_t coord;   // ignored for global moves
  Rational factor;     // exact multiplier
  double value;        // factor as a double
  GroupElement element;
};

// Symmetric move set inside the V ball; InvalidArgument when empty.
std::vector<Move> move_set(const LocalOrbitParams& p);

struct ReachedPoint {
  std::vector<long> key;
  std::vector<double> coords;
  long parent = -1;  // index in the report, -1 for the center
  int move = -1;     // move index applied to the parent
  std::size_t depth = 0;
};

struct OrbitReport {
  std::vector<Move> moves;
  std::vector<ReachedPoint> points;  // in discovery order, center first
  bool frontier_exhausted = false;
  bool budget_exhausted = false;
  std::uint64_t expansions = 0;

  std::vector<int> witness(std::size_t i) const;
  // Reached keys in sorted order.
  std::vector<std::vector<long>> keys() const;
};

std::vector<long> grid_key(const std::vector<double>& coords, double eps);
double l1_to_center(const std::vector<double>& y, const std::vector<double>& x);

OrbitReport explore(const LocalOrbitParams& p);

// Fraction of the eps-grid points x + eps k (eps |k|_1 <= U', positive
// coordinates) within l1 distance eps of a reached point.
struct DensityResult {
  std::size_t grid_points = 0;
  std::size_t covered = 0;
  double fraction = 0;
};
DensityResult density_probe(const LocalOrbitParams& p, const OrbitReport& r, double u_prime, double eps);

// Replays every witness through act in float mode. Reports the largest
// deviation from the reported points and whether every intermediate point
// stayed inside U.
struct ReplayResult {
  double max_deviation = 0;
  bool all_inside = true;
  std::size_t checked = 0;
};
ReplayResult replay_witnesses(const LocalOrbitParams& p, const OrbitReport& r);
// Full replay of a single point from the center.
ReplayResult replay_witness(const LocalOrbitParams& p, const OrbitReport& r, std::size_t i);

struct ProbeRow {
  std::size_t dims;
  double u_radius, v_radius, u_prime, delta, eps;
  std::uint64_t budget;
  std::size_t reached, control_reached;
  double fraction, control_fraction;
  bool budget_exhausted, control_budget_exhausted;  // stopped with a nonempty frontier
};
struct ProbeSpec {
  std::size_t dims;
  double u_radius, v_radius, u_prime;
  std::uint64_t budget;
};
std::vector<ProbeRow> turbulence_probe(const LocalOrbitParams& base, const std::vector<ProbeSpec>& schedule);

std::string probe_csv(const std::vector<ProbeRow>& rows);
// One reached point per line, sorted by key.
std::string report_jsonl(const OrbitReport& r);

}  // namespace polact
