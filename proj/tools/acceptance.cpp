// Acceptance runner: one PASS/FAIL line per criterion.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "polact/suites.hpp"

namespace fs = std::filesystem;

namespace {

struct Criterion {
  const char* suite;
  const char* label;
  double limit_seconds;
};

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

// Sorted relative file names under dir.
std::vector<std::string> listing(const fs::path& dir) {
  std::vector<std::string> out;
  if (!fs::exists(dir)) return out;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (e.is_regular_file()) out.push_back(fs::relative(e.path(), dir).string());
  }
  std::sort(out.begin(), out.end());
  return out;
}

int run_cli(const std::string& args, const fs::path& log) {
  std::string cmd = std::string("\"") + POLACT_CLI_PATH + "\" " + args + " > \"" + log.string() + "\" 2>&1";
  int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

bool determinism(std::string& detail) {
  fs::path root = fs::path(POLACT_WORK_DIR) / "acceptance_determinism";
  fs::remove_all(root);
  fs::create_directories(root);
  const std::vector<std::string> commands{"verify", "approx", "orbit", "counterexample", "witness"};
  std::size_t files = 0;
  for (const auto& c : commands) {
    for (const char* run : {"run1", "run2"}) {
      fs::path out = root / run / c;
      int rc = run_cli(c + " --seed 7 --out \"" + out.string() + "\"", root / (std::string(run) + "_" + c + ".log"));
      if (rc != 0) {
        detail = c + " exited with " + std::to_string(rc);
        return false;
      }
    }
    auto a = listing(root / "run1" / c), b = listing(root / "run2" / c);
    if (a.empty() || a != b) {
      detail = c + " produced different file sets";
      return false;
    }
    for (const auto& f : a) {
      if (slurp(root / "run1" / c / f) != slurp(root / "run2" / c / f)) {
        detail = c + "/" + f + " differs between runs";
        return false;
      }
      ++files;
    }
  }
  // The written witness file must re-check from the record alone.
  int rc = run_cli("witness --check \"" + (root / "run1" / "witness" / "witness.json").string() + "\"",
                   root / "witness_check.log");
  if (rc != 0) {
    detail = "witness --check exited with " + std::to_string(rc);
    return false;
  }
  detail = std::to_string(commands.size()) + " commands, " + std::to_string(files) + " files byte-identical";
  return true;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"isometry", "isometry suite", 10},
      {"strong_approximation", "strong-approximation suite", 10},
      {"density_meagerness", "density/meagerness suite", 10},
      {"group_continuity", "group/continuity suite", 10},
      {"function_space", "function-space suite", 60},
      {"orbit_lab", "orbit-lab acceptance", 120},
  };
  polact::SuiteOptions opts;
  opts.seed = 2024;
  bool all = true;
  for (const auto& c : criteria) {
    polact::Suite run = nullptr;
    for (const auto& s : polact::all_suites())
      if (std::string(s.name) == c.suite) run = s.run;
    auto t0 = std::chrono::steady_clock::now();
    auto results = run(opts);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::uint64_t checks = 0;
    std::vector<std::string> failing;
    for (const auto& r : results) {
      checks += r.checks;
      if (!r.passed()) failing.push_back(r.name + " " + (r.failures.empty() ? "" : r.failures.front().dump()));
    }
    bool ok = failing.empty() && secs < c.limit_seconds;
    all = all && ok;
    std::printf("%s  %-28s invariants=%zu checks=%llu time=%.2fs limit=%.0fs\n", ok ? "PASS" : "FAIL", c.label,
                results.size(), static_cast<unsigned long long>(checks), secs, c.limit_seconds);
    for (const auto& f : failing) std::printf("      failing: %s\n", f.c_str());
  }
  std::string detail;
  auto t0 = std::chrono::steady_clock::now();
  bool det = determinism(detail);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  all = all && det;
  std::printf("%s  %-28s %s time=%.2fs\n", det ? "PASS" : "FAIL", "determinism", detail.c_str(), secs);
  return all ? 0 : 1;
}
