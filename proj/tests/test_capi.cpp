#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <string>

#include "polact/polact.h"

namespace {

std::string take(char* s) {
  std::string out = s ? s : "";
  pa_string_free(s);
  return out;
}

const char* kHalf = R"({"base":0,"mode":"real","prefix":[],"tail":{"kind":"geom","a":"1/2","r":"1/2"}})";
const char* kThird = R"({"base":0,"mode":"real","prefix":[],"tail":{"kind":"geom","a":"1/3","r":"1/3"}})";

}  // namespace

TEST_CASE("sequence handles") {
  pa_seq* x = nullptr;
  REQUIRE(pa_seq_parse(kHalf, &x) == PA_OK);
  char* s = nullptr;
  REQUIRE(pa_seq_l1_norm(x, nullptr, &s) == PA_OK);
  CHECK(take(s) == R"({"decimal":"1","fraction":"1"})");
  pa_seq* y = nullptr;
  REQUIRE(pa_seq_parse(kThird, &y) == PA_OK);
  REQUIRE(pa_seq_l1_dist(x, y, "1e-12", &s) == PA_OK);
  CHECK(take(s).find("\"fraction\":\"1/2\"") != std::string::npos);
  REQUIRE(pa_seq_serialize(x, &s) == PA_OK);
  CHECK(take(s).find("\"geom\"") != std::string::npos);

  pa_seq* g = nullptr;
  REQUIRE(pa_seq_parse(R"({"base":0,"mode":"real","prefix":["2"],"tail":{"kind":"const","c":"1"}})", &g) == PA_OK);
  pa_seq* gx = nullptr;
  REQUIRE(pa_act("G_on_P", g, x, &gx) == PA_OK);
  REQUIRE(pa_seq_l1_norm(gx, nullptr, &s) == PA_OK);
  CHECK(take(s).find("\"fraction\":\"3/2\"") != std::string::npos);
  pa_seq* e = nullptr;
  REQUIRE(pa_seq_parse(R"({"base":0,"mode":"real","prefix":[],"tail":{"kind":"const","c":"1"}})", &e) == PA_OK);
  REQUIRE(pa_group_rho("G_on_P", g, e, nullptr, &s) == PA_OK);
  CHECK(take(s).find("\"fraction\":\"3/2\"") != std::string::npos);

  CHECK(pa_act("nowhere", g, x, &gx) == PA_ERR_INVALID_ARGUMENT);
  CHECK(std::string(pa_last_error()).find("unknown action") != std::string::npos);
  for (auto* h : {x, y, g, gx, e}) pa_seq_free(h);
}

TEST_CASE("errors are reported as codes") {
  pa_seq* x = nullptr;
  CHECK(pa_seq_parse("{", &x) == PA_ERR_PARSE);
  CHECK(x == nullptr);
  CHECK(std::string(pa_last_error()).size() > 0);
  CHECK(pa_seq_parse(nullptr, &x) == PA_ERR_NULL);
  CHECK(pa_seq_parse(R"({"base":0,"mode":"real","prefix":[],"tail":{"kind":"const","c":"1"}})", &x) == PA_OK);
  CHECK(std::string(pa_last_error()).empty());
  char* s = nullptr;
  CHECK(pa_seq_l1_norm(x, nullptr, &s) == PA_ERR_DOMAIN);
  pa_seq_free(x);
}

TEST_CASE("experiment reports") {
  auto out = (std::filesystem::temp_directory_path() / "polact_capi_ce").string();
  pa_report* r = nullptr;
  std::string cfg = R"({"command":"counterexample","out":")" + out + R"("})";
  REQUIRE(pa_experiment_run(cfg.c_str(), &r) == PA_OK);
  CHECK(pa_report_exit_code(r) == 0);
  char* s = nullptr;
  REQUIRE(pa_report_json(r, &s) == PA_OK);
  CHECK(take(s).find("\"status\": \"pass\"") != std::string::npos);
  pa_report_free(r);

  CHECK(pa_experiment_run(R"({"command":"counterexample","g":["1"]})", &r) == PA_ERR_INVALID_ARGUMENT);
  CHECK(std::string(pa_last_error()).find("g(1) != 1") != std::string::npos);
  CHECK(pa_experiment_run("not json", &r) == PA_ERR_PARSE);
  CHECK(pa_witness_check("/nonexistent/witness.json", &r) == PA_ERR_INVALID_ARGUMENT);
}
