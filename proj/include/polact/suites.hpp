#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "polact/orbitlab.hpp"
#include "polact/serialize.hpp"

namespace polact {

// Outcome of one named invariant over a seeded batch of instances.
struct InvariantResult {
  std::string name;
  std::string module;
  std::uint64_t checks = 0;
  std::uint64_t failed = 0;
  std::vector<Json> failures;  // witness values of the first few failures
  bool passed() const { return failed == 0; }
};

struct SuiteOptions {
  std::uint64_t seed = 1;
  std::size_t count = 100;             // random instances per invariant
  Rational tol = default_tolerance();  // enclosure width for undecided comparisons
  Rational meager_ratio_bound{3, 2};
  long riemann_cells = 1000000;        // midpoint cells for the act_L1 oracle
};

using Suite = std::vector<InvariantResult> (*)(const SuiteOptions&);

std::vector<InvariantResult> isometry_suite(const SuiteOptions& o);
std::vector<InvariantResult> strong_approx_suite(const SuiteOptions& o);
std::vector<InvariantResult> density_meager_suite(const SuiteOptions& o);
std::vector<InvariantResult> group_continuity_suite(const SuiteOptions& o);
std::vector<InvariantResult> funcspace_suite(const SuiteOptions& o);
std::vector<InvariantResult> orbit_suite(const SuiteOptions& o);

struct NamedSuite {
  const char* name;
  Suite run;
};
// Every suite, in a fixed order.
const std::vector<NamedSuite>& all_suites();

Json to_json(const InvariantResult& r);

// n = 2, delta = 0.01, U = 0.2, V = 0.05, eps = 0.02, budget 10^5, center
// (1/2, 1/4, 1/8, ...).
LocalOrbitParams reference_orbit_params();

}  // namespace polact
