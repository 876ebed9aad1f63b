#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "polact/error.hpp"
#include "polact/experiments.hpp"
#include "polact/suites.hpp"
#include "support.hpp"

using namespace testing_support;

namespace {

std::string scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("polact_test_" + name);
  std::filesystem::remove_all(dir);
  return dir.string();
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(f), {});
}

ExperimentConfig config(Json j, const std::string& out) {
  j["out"] = out;
  return ExperimentConfig::from_json(j);
}

}  // namespace

TEST_CASE("parse_tolerance") {
  CHECK(parse_tolerance("1e-12") == default_tolerance());
  CHECK(parse_tolerance("2.5E3") == 2500);
  CHECK(parse_tolerance("1/1000") == q("1/1000"));
  CHECK(parse_tolerance("0.001") == q("1/1000"));
  CHECK_THROWS_AS(parse_tolerance("1e-x"), Error);
  CHECK_THROWS_AS(parse_tolerance("abc"), Error);
}

TEST_CASE("config validation") {
  auto c = ExperimentConfig::from_json({{"command", "approx"}, {"tol", "1e-9"}, {"seed", 5}, {"n_max", 4}});
  CHECK(c.tol == q("1/1000000000"));
  CHECK(c.seed == 5);
  CHECK(c.params.at("n_max") == 4);
  auto j = c.to_json();
  CHECK(j.at("tol") == "1/1000000000");
  CHECK_FALSE(j.contains("out"));
  CHECK_THROWS_AS(ExperimentConfig::from_json({{"command", "launch"}}), Error);
  CHECK_THROWS_AS(ExperimentConfig::from_json({{"command", "approx"}, {"tol", "0"}}), Error);
  CHECK_THROWS_AS(ExperimentConfig::from_json({{"command", "approx"}, {"mode", "complex"}}), Error);
  CHECK_THROWS_AS(ExperimentConfig::from_json({{"command", "approx"}, {"count", 3}}), Error);
  CHECK_THROWS_AS(ExperimentConfig::from_json(Json::array()), Error);
}

TEST_CASE("verify with a mutated meager bound fails with exit 2") {
  auto out = scratch("mutation");
  auto r = run_experiment(config({{"command", "verify"}, {"meager_ratio_bound", "1"}, {"count", 5},
                                  {"suites", {"density_meagerness"}}},
                                 out));
  CHECK(r.exit_code == 2);
  CHECK(r.status == "fail");
  CHECK(r.summary.at("failing").size() >= 1);
  auto report = Json::parse(slurp(out + "/verify.json"));
  CHECK(report.at("config").at("meager_ratio_bound") == "1");

  auto ok = run_experiment(config({{"command", "verify"}, {"count", 5}, {"suites", {"isometry", "density_meagerness"}}},
                                  scratch("verify_small")));
  CHECK(ok.exit_code == 0);
  CHECK_THROWS_AS(run_experiment(config({{"command", "verify"}, {"suites", {"nope"}}}, scratch("bad"))), Error);
}

TEST_CASE("approx table") {
  auto out = scratch("approx");
  auto r = run_experiment(config({{"command", "approx"}, {"n_max", 5}, {"instances", 2}}, out));
  CHECK(r.exit_code == 0);
  auto csv = slurp(out + "/approx.csv");
  CHECK(csv.rfind("experiment,instance,N,eps,residual_fraction,residual_decimal,exact,meets_eps\n", 0) == 0);
  CHECK(csv.find("density_witness,geom(1/2,1/2)->geom(1/3,1/3),1,,7/36,0.194444444444444444444444,1,") !=
        std::string::npos);
  CHECK(csv.find("strong_approx_eps,xi(3/2,1/2;1/2),1,1,1/8,0.125,1,1") != std::string::npos);
  // Truncation residuals of the fixed density: sum over n > N of (1/2) 2^-(n+1).
  for (int N = 0; N <= 5; ++N) {
    auto row = "strong_approx_truncation,xi(3/2,1/2;1/2)," + std::to_string(N) + ",," + to_string(pow(Rational(1, 2), N + 2));
    CHECK(csv.find(row) != std::string::npos);
  }
}

TEST_CASE("counterexample report") {
  auto out = scratch("counterexample");
  auto r = run_experiment(config({{"command", "counterexample"}}, out));
  CHECK(r.exit_code == 0);
  auto rep = Json::parse(slurp(out + "/counterexample.json"));
  CHECK(rep.at("gap").at("text") == "4*x^2 - 6*x + 2");
  CHECK(rep.at("gap_at_3/4").at("fraction") == "-1/4");
  CHECK(rep.at("extremum").at("x").at("fraction") == "3/4");
  CHECK(rep.at("continuity_bound").size() == 10);
  try {
    run_experiment(config({{"command", "counterexample"}, {"g", {"1", "3"}}}, scratch("ce_bad")));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("g(1) != 1") != std::string::npos);
  }
}

TEST_CASE("witness records re-check and detect tampering") {
  auto out = scratch("witness");
  auto r = run_experiment(config({{"command", "witness"}, {"instances", 2}}, out));
  CHECK(r.exit_code == 0);
  auto path = out + "/witness.json";
  CHECK(check_witness_file(path).exit_code == 0);

  auto doc = Json::parse(slurp(path));
  CHECK(doc.at("records").at(0).at("residual").at("fraction") == "73/1296");
  auto bad = doc;
  bad["records"][0]["residual"]["fraction"] = "1/2";
  CHECK(check_witness_records(bad).exit_code == 2);
  bad = doc;
  bad["records"][1]["witness"]["z_N"] = bad["records"][1]["inputs"]["z"];
  CHECK(check_witness_records(bad).exit_code == 2);
  bad = doc;
  bad["records"][2]["witness"]["h"]["prefix"][0] = "5";
  CHECK(check_witness_records(bad).exit_code == 2);
  CHECK_THROWS_AS(check_witness_file(out + "/missing.json"), Error);
}

TEST_CASE("commands are deterministic") {
  for (const char* cmd : {"approx", "counterexample", "witness"}) {
    auto a = scratch(std::string(cmd) + "_a"), b = scratch(std::string(cmd) + "_b");
    auto ra = run_experiment(config({{"command", cmd}, {"seed", 11}}, a));
    auto rb = run_experiment(config({{"command", cmd}, {"seed", 11}}, b));
    REQUIRE(ra.files.size() == rb.files.size());
    for (std::size_t i = 0; i < ra.files.size(); ++i) CHECK(slurp(ra.files[i]) == slurp(rb.files[i]));
  }
}
