#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "polact/serialize.hpp"

namespace polact {

// Flat configuration shared by every command. Keys other than command, mode,
// tol, seed and out are per-command instance parameters.
struct ExperimentConfig {
  std::string command;  // verify, approx, orbit, counterexample, witness
  ScalarMode mode = ScalarMode::ExactReal;
  Rational tol = default_tolerance();
  std::uint64_t seed = 1;
  std::string out = "out";
  Json params = Json::object();

  // Throws Parse / InvalidArgument on unknown commands or keys, tol <= 0.
  static ExperimentConfig from_json(const Json& j);
  // Everything that determines the outputs; the output directory is left out.
  Json to_json() const;
};

struct ExperimentResult {
  int exit_code = 0;   // 0 pass, 1 runtime error, 2 invariant failure
  std::string status;  // "pass", "fail" or "error"
  Json summary = Json::object();
  std::vector<std::string> files;

  Json to_json() const;
};

// Runs one command and writes its files under config.out. Library errors
// propagate as polact::Error; invariant failures are reported with exit 2.
ExperimentResult run_experiment(const ExperimentConfig& config);

ExperimentResult run_verify(const ExperimentConfig& config);
ExperimentResult run_approx(const ExperimentConfig& config);
ExperimentResult run_orbit(const ExperimentConfig& config);
ExperimentResult run_counterexample(const ExperimentConfig& config);
ExperimentResult run_witness(const ExperimentConfig& config);

// Re-checks every record of a witness file written by run_witness.
ExperimentResult check_witness_file(const std::string& path);
ExperimentResult check_witness_records(const Json& doc);

// "1/10^12"-style values: integers, p/q, decimals and d.ddde-k.
Rational parse_tolerance(const std::string& text);

}  // namespace polact
