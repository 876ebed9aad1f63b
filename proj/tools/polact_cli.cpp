// Command-line experiment runner. Talks to the library only through the C API.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "polact/polact.h"

namespace {

using Json = nlohmann::json;

int report_and_exit(pa_status st, pa_report* report) {
  if (st != PA_OK) {
    std::cerr << "error: " << pa_last_error() << "\n";
    return 1;
  }
  char* text = nullptr;
  if (pa_report_json(report, &text) != PA_OK) {
    std::cerr << "error: " << pa_last_error() << "\n";
    pa_report_free(report);
    return 1;
  }
  std::cout << text << "\n";
  pa_string_free(text);
  int code = pa_report_exit_code(report);
  pa_report_free(report);
  return code;
}

Json load_config(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot read config '" + path + "'");
  try {
    return Json::parse(f);
  } catch (const Json::exception& e) {
    throw std::runtime_error("config '" + path + "' is not valid JSON: " + e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"polact experiment runner"};
  app.require_subcommand(1);

  std::optional<std::string> mode, tol, out, config_path;
  std::optional<std::uint64_t> seed;
  app.add_option("--mode", mode, "Scalar mode")->check(CLI::IsMember({"exact", "float"}));
  app.add_option("--tol", tol, "Tolerance for certified enclosures, e.g. 1e-12 or 1/1000");
  app.add_option("--seed", seed, "Seed for every randomized instance");
  app.add_option("--out", out, "Output directory");
  app.add_option("--config", config_path, "Flat JSON config file");

  std::string check_path;
  for (const char* name : {"verify", "approx", "orbit", "counterexample", "witness"}) {
    auto* sub = app.add_subcommand(name);
    sub->fallthrough();
    if (std::string(name) == "witness") sub->add_option("--check", check_path, "Re-check a witness file instead of writing one");
  }

  CLI11_PARSE(app, argc, argv);
  std::string command = app.get_subcommands().front()->get_name();

  if (command == "witness" && !check_path.empty()) {
    pa_report* report = nullptr;
    pa_status st = pa_witness_check(check_path.c_str(), &report);
    return report_and_exit(st, report);
  }

  Json config = Json::object();
  try {
    if (config_path) config = load_config(*config_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  if (!config.is_object()) {
    std::cerr << "error: config must be a JSON object\n";
    return 1;
  }
  if (config.contains("command") && config["command"] != command) {
    std::cerr << "error: config command '" << config["command"].get<std::string>() << "' does not match '" << command
              << "'\n";
    return 1;
  }
  config["command"] = command;
  if (mode) config["mode"] = *mode;
  if (tol) config["tol"] = *tol;
  if (seed) config["seed"] = *seed;
  if (out) config["out"] = *out;

  pa_report* report = nullptr;
  pa_status st = pa_experiment_run(config.dump().c_str(), &report);
  return report_and_exit(st, report);
}
