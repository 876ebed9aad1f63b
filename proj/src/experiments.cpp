#include "polact/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "polact/actions.hpp"
#include "polact/error.hpp"
#include "polact/funcspace.hpp"
#include "polact/measures.hpp"
#include "polact/orbitlab.hpp"
#include "polact/suites.hpp"

namespace polact {

namespace {

const std::set<std::string> kCommands{"verify", "approx", "orbit", "counterexample", "witness"};

const std::set<std::string>& allowed_params(const std::string& command) {
  static const std::map<std::string, std::set<std::string>> keys{
      {"verify", {"count", "meager_ratio_bound", "riemann_cells", "suites"}},
      {"approx", {"n_max", "eps_schedule", "instances"}},
      {"orbit", {"schedule", "center", "delta", "levels", "eps"}},
      {"counterexample", {"g", "h", "rows"}},
      {"witness", {"N", "instances", "ratio_bound", "eps"}},
  };
  return keys.at(command);
}

template <typename T>
T param(const ExperimentConfig& c, const char* key, T fallback) {
  if (!c.params.contains(key)) return fallback;
  try {
    return c.params.at(key).get<T>();
  } catch (const Json::exception& e) {
    fail(ErrorCode::Parse, std::string("config key '") + key + "': " + e.what());
  }
}

Rational rational_param(const ExperimentConfig& c, const char* key, const Rational& fallback) {
  if (!c.params.contains(key)) return fallback;
  const auto& v = c.params.at(key);
  if (v.is_number_integer()) return Rational(v.get<long>());
  if (v.is_string()) return parse_rational(v.get<std::string>());
  fail(ErrorCode::Parse, std::string("config key '") + key + "' must be an integer or a \"p/q\" string");
}

std::vector<Rational> rational_list(const ExperimentConfig& c, const char* key, std::vector<Rational> fallback) {
  if (!c.params.contains(key)) return fallback;
  const auto& v = c.params.at(key);
  require(v.is_array(), ErrorCode::Parse, std::string("config key '") + key + "' must be a list");
  std::vector<Rational> out;
  for (const auto& e : v) {
    if (e.is_number_integer()) out.push_back(Rational(e.get<long>()));
    else if (e.is_string()) out.push_back(parse_rational(e.get<std::string>()));
    else fail(ErrorCode::Parse, std::string("config key '") + key + "' holds a non-rational entry");
  }
  return out;
}

std::string write_file(const ExperimentConfig& c, const std::string& name, const std::string& content) {
  std::filesystem::path dir(c.out);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  require(!ec, ErrorCode::InvalidArgument, "cannot create output directory '" + c.out + "': " + ec.message());
  auto path = dir / name;
  std::ofstream f(path, std::ios::binary);
  require(static_cast<bool>(f), ErrorCode::InvalidArgument, "cannot write '" + path.string() + "'");
  f << content;
  f.close();
  require(static_cast<bool>(f), ErrorCode::InvalidArgument, "cannot write '" + path.string() + "'");
  return path.string();
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// CSV cells never contain commas here; quotes are not needed.
std::string csv_line(const std::vector<std::string>& cells) {
  std::string s;
  for (std::size_t i = 0; i < cells.size(); ++i) s += (i ? "," : "") + cells[i];
  return s + "\n";
}

void finish(ExperimentResult& r, bool ok) {
  r.exit_code = ok ? 0 : 2;
  r.status = ok ? "pass" : "fail";
}

TailedSeq geometric_seq(Index base, const char* a, const char* r) {
  return TailedSeq::geometric(base, {}, Scalar(parse_rational(a)), Scalar(parse_rational(r)));
}

PMeasure half_geometric() { return PMeasure::geometric({}, Rational(1, 2), Rational(1, 2)); }

Rational rand_pos(std::mt19937_64& rng) {
  Rational r(static_cast<long>(1 + rng() % 9), static_cast<long>(1 + rng() % 9));
  r.canonicalize();
  return r;
}

TailedSeq rand_point(std::mt19937_64& rng) {
  std::vector<Scalar> p;
  long k = static_cast<long>(rng() % 4);
  for (long i = 0; i < k; ++i) p.push_back(Scalar(rand_pos(rng)));
  Rational r(1, static_cast<long>(2 + rng() % 5));
  return TailedSeq::geometric(0, std::move(p), Scalar(rand_pos(rng)), Scalar(r));
}

PMeasure rand_measure(std::mt19937_64& rng) {
  std::vector<Rational> atoms;
  long k = static_cast<long>(rng() % 4);
  for (long i = 0; i < k; ++i) atoms.push_back(rand_pos(rng));
  Rational r(1, static_cast<long>(2 + rng() % 4));
  Rational a = rand_pos(rng);
  Rational mass = a / (1 - r);
  for (auto& x : atoms) mass += x;
  std::vector<Scalar> p;
  for (auto& x : atoms) p.push_back(Scalar(Rational(x / mass)));
  return PMeasure::geometric(std::move(p), a / mass, r);
}

GroupElement g_star(const std::vector<Rational>& prefix) {
  std::vector<Scalar> p;
  for (const auto& v : prefix) p.push_back(Scalar(v));
  return GroupElement::from_prefix(GroupDomain::PositiveReal, 1, std::move(p));
}

Json poly_json(const Polynomial& p) {
  Json coeffs = Json::array();
  for (const auto& c : p.coeffs()) coeffs.push_back(exact_json(c));
  return {{"text", p.to_string()}, {"coefficients", coeffs}};
}

}  // namespace

Rational parse_tolerance(const std::string& text) {
  auto e = text.find_first_of("eE");
  if (e == std::string::npos) return parse_rational(text);
  Rational mant = parse_rational(text.substr(0, e));
  long exp = 0;
  try {
    std::size_t used = 0;
    exp = std::stol(text.substr(e + 1), &used);
    require(used == text.size() - e - 1, ErrorCode::Parse, "malformed exponent in '" + text + "'");
  } catch (const std::logic_error&) {
    fail(ErrorCode::Parse, "malformed exponent in '" + text + "'");
  }
  require(std::labs(exp) <= 4000, ErrorCode::Parse, "exponent out of range in '" + text + "'");
  Rational scale = pow(Rational(10), static_cast<unsigned long>(std::labs(exp)));
  return exp < 0 ? Rational(mant / scale) : Rational(mant * scale);
}

ExperimentConfig ExperimentConfig::from_json(const Json& j) {
  require(j.is_object(), ErrorCode::Parse, "config must be a JSON object");
  ExperimentConfig c;
  for (const auto& [key, value] : j.items()) {
    try {
      if (key == "command") {
        c.command = value.get<std::string>();
      } else if (key == "mode") {
        auto m = value.get<std::string>();
        require(m == "exact" || m == "float", ErrorCode::Parse, "mode must be 'exact' or 'float'");
        c.mode = parse_mode(m);
      } else if (key == "tol") {
        c.tol = value.is_string() ? parse_tolerance(value.get<std::string>()) : from_double(value.get<double>());
      } else if (key == "seed") {
        c.seed = value.get<std::uint64_t>();
      } else if (key == "out") {
        c.out = value.get<std::string>();
      } else {
        c.params[key] = value;
      }
    } catch (const Json::exception& e) {
      fail(ErrorCode::Parse, "config key '" + key + "': " + e.what());
    }
  }
  require(kCommands.count(c.command) == 1, ErrorCode::InvalidArgument,
          "unknown command '" + c.command + "' (expected verify, approx, orbit, counterexample or witness)");
  require(c.tol > 0, ErrorCode::InvalidArgument, "tol must be positive");
  for (const auto& [key, value] : c.params.items()) {
    require(allowed_params(c.command).count(key) == 1, ErrorCode::InvalidArgument,
            "unknown config key '" + key + "' for command " + c.command);
  }
  return c;
}

Json ExperimentConfig::to_json() const {
  Json j = params;
  j["command"] = command;
  j["mode"] = mode == ScalarMode::Float ? "float" : "exact";
  j["tol"] = polact::to_string(tol);
  j["seed"] = seed;
  return j;
}

Json ExperimentResult::to_json() const {
  return {{"status", status}, {"exit_code", exit_code}, {"summary", summary}, {"files", files}};
}

ExperimentResult run_experiment(const ExperimentConfig& c) {
  if (c.command == "verify") return run_verify(c);
  if (c.command == "approx") return run_approx(c);
  if (c.command == "orbit") return run_orbit(c);
  if (c.command == "counterexample") return run_counterexample(c);
  if (c.command == "witness") return run_witness(c);
  fail(ErrorCode::InvalidArgument, "unknown command '" + c.command + "'");
}

ExperimentResult run_verify(const ExperimentConfig& c) {
  require(c.mode != ScalarMode::Float, ErrorCode::InvalidArgument, "verify runs exact suites only; use --mode exact");
  SuiteOptions o;
  o.seed = c.seed;
  o.tol = c.tol;
  o.count = param<std::size_t>(c, "count", 100);
  o.meager_ratio_bound = rational_param(c, "meager_ratio_bound", Rational(3, 2));
  o.riemann_cells = param<long>(c, "riemann_cells", 1000000);
  require(o.count > 0 && o.riemann_cells > 0, ErrorCode::InvalidArgument, "count and riemann_cells must be positive");
  auto wanted = param<std::vector<std::string>>(c, "suites", {});
  for (const auto& w : wanted) {
    bool known = std::any_of(all_suites().begin(), all_suites().end(), [&](const NamedSuite& s) { return w == s.name; });
    require(known, ErrorCode::InvalidArgument, "unknown suite '" + w + "'");
  }

  Json suites = Json::array();
  std::size_t total = 0, failed = 0;
  Json failing = Json::array();
  for (const auto& s : all_suites()) {
    if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), s.name) == wanted.end()) continue;
    Json invariants = Json::array();
    bool suite_ok = true;
    for (const auto& r : s.run(o)) {
      ++total;
      if (!r.passed()) {
        ++failed;
        suite_ok = false;
        failing.push_back(r.name);
      }
      invariants.push_back(to_json(r));
    }
    suites.push_back({{"suite", s.name}, {"passed", suite_ok}, {"invariants", invariants}});
  }

  ExperimentResult r;
  finish(r, failed == 0);
  r.summary = {{"invariants", total}, {"passed", total - failed}, {"failed", failed}, {"failing", failing}};
  Json report{{"config", c.to_json()}, {"status", r.status}, {"summary", r.summary}, {"suites", suites}};
  r.files.push_back(write_file(c, "verify.json", dump(report)));
  return r;
}

ExperimentResult run_approx(const ExperimentConfig& c) {
  long n_max_raw = param<long>(c, "n_max", 10);
  require(n_max_raw >= 0, ErrorCode::InvalidArgument, "n_max must be nonnegative");
  auto n_max = static_cast<Index>(n_max_raw);
  auto instances = param<std::size_t>(c, "instances", 3);
  auto schedule = rational_list(c, "eps_schedule", {Rational(1), Rational(1, 10), Rational(1, 100), Rational(1, 1000)});
  for (const auto& e : schedule) require(e > 0, ErrorCode::InvalidArgument, "eps_schedule entries must be positive");

  std::string csv = csv_line({"experiment", "instance", "N", "eps", "residual_fraction", "residual_decimal", "exact",
                              "meets_eps"});
  bool ok = true;
  auto row = [&](const std::string& exp, const std::string& inst, Index N, const std::string& eps,
                 const Enclosure& res, const std::string& meets) {
    // Enclosures are reported by their upper end.
    csv += csv_line({exp, inst, std::to_string(N), eps, to_string(res.hi), to_decimal(res.hi), res.is_exact() ? "1" : "0",
                     meets});
  };

  // density_witness: the fixed instance first, then seeded ones.
  std::mt19937_64 rng(c.seed);
  std::vector<std::pair<std::string, std::pair<TailedSeq, TailedSeq>>> dens{
      {"geom(1/2,1/2)->geom(1/3,1/3)", {geometric_seq(0, "1/2", "1/2"), geometric_seq(0, "1/3", "1/3")}}};
  for (std::size_t i = 0; i < instances; ++i) dens.push_back({"seeded" + std::to_string(i), {rand_point(rng), rand_point(rng)}});
  auto ctx = ActionCtx::G_on_P();
  for (const auto& [name, xy] : dens) {
    auto x = xy.first, y = xy.second;
    if (c.mode == ScalarMode::Float) {
      x = x.to_mode(ScalarMode::Float);
      y = y.to_mode(ScalarMode::Float);
    }
    for (Index N = 0; N <= n_max; ++N) row("density_witness", name, N, "", density_witness(ctx, x, y, N, c.tol).residual, "");
  }

  // Strong approximation: truncation residual against N, then the eps schedule.
  std::vector<std::pair<std::string, std::pair<PMeasure, DensityVar>>> sa;
  auto P0 = half_geometric();
  sa.push_back({"xi(3/2,1/2;1/2)", {P0, DensityVar(TailedSeq::constant(0, {Scalar(Rational(3, 2)), Scalar(Rational(1, 2))},
                                                                          Scalar(Rational(1, 2))),
                                                        P0)}});
  for (std::size_t i = 0; i < instances; ++i) {
    auto P = rand_measure(rng), Q = rand_measure(rng);
    sa.push_back({"seeded" + std::to_string(i), {P, e_related(P, Q)}});
  }
  for (const auto& [name, pxi] : sa) {
    const auto& [P, xi] = pxi;
    for (Index N = 0; N <= n_max; ++N) {
      std::vector<Scalar> head;
      for (Index n = 0; n <= N; ++n) head.push_back(xi.seq().entry(n));
      auto g = GroupElement::from_prefix(GroupDomain::PositiveReal, 0, std::move(head));
      row("strong_approx_truncation", name, N, "", weighted_l1_dist(P, xi.seq(), g.seq()), "");
    }
    for (const auto& eps : schedule) {
      auto w = strong_approx_witness(P, xi, eps);
      bool meets = w.residual < eps;
      ok = ok && meets;
      row("strong_approx_eps", name, w.N, to_string(eps), Enclosure::exact(w.residual), meets ? "1" : "0");
    }
  }

  ExperimentResult r;
  finish(r, ok);
  r.summary = {{"density_instances", dens.size()}, {"strong_approx_instances", sa.size()}, {"n_max", n_max}};
  r.files.push_back(write_file(c, "approx.csv", csv));
  Json report{{"config", c.to_json()}, {"status", r.status}, {"summary", r.summary}};
  r.files.push_back(write_file(c, "approx.json", dump(report)));
  return r;
}

ExperimentResult run_orbit(const ExperimentConfig& c) {
  auto base = reference_orbit_params();
  base.seed = c.seed;
  base.delta = param<double>(c, "delta", base.delta);
  base.levels = param<std::size_t>(c, "levels", base.levels);
  base.eps = param<double>(c, "eps", base.eps);
  if (c.params.contains("center")) {
    auto head = param<std::vector<double>>(c, "center", {});
    std::vector<Scalar> p;
    for (double v : head) p.push_back(Scalar::floating(v));
    base.center = TailedSeq::geometric(0, std::move(p), Scalar::floating(0.125), Scalar::floating(0.5));
  }
  std::vector<ProbeSpec> schedule;
  if (c.params.contains("schedule")) {
    for (const auto& s : c.params.at("schedule")) {
      try {
        schedule.push_back({s.value("dims", std::size_t{2}), s.value("u_radius", 0.2), s.value("v_radius", 0.05),
                            s.value("u_prime", 0.05), s.value("budget", std::uint64_t{100000})});
      } catch (const Json::exception& e) {
        fail(ErrorCode::Parse, std::string("orbit schedule row: ") + e.what());
      }
    }
  } else {
    for (std::uint64_t b : {100, 1000, 10000, 100000}) schedule.push_back({2, 0.2, 0.05, 0.05, b});
  }
  require(!schedule.empty(), ErrorCode::InvalidArgument, "orbit schedule is empty");

  auto rows = turbulence_probe(base, schedule);
  ExperimentResult r;
  r.files.push_back(write_file(c, "orbit.csv", probe_csv(rows)));
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    auto p = base;
    p.dims = schedule[i].dims;
    p.u_radius = schedule[i].u_radius;
    p.v_radius = schedule[i].v_radius;
    p.budget = schedule[i].budget;
    r.files.push_back(write_file(c, "orbit_row" + std::to_string(i) + ".jsonl", report_jsonl(explore(p))));
  }
  Json table = Json::array();
  std::size_t exhausted = 0;
  for (const auto& row : rows) {
    exhausted += row.budget_exhausted ? 1 : 0;
    table.push_back({{"dims", row.dims}, {"budget", row.budget}, {"reached", row.reached}, {"fraction", row.fraction},
                     {"control_fraction", row.control_fraction}, {"budget_exhausted", row.budget_exhausted}});
  }
  finish(r, true);
  r.summary = {{"rows", rows.size()}, {"budget_exhausted_rows", exhausted}, {"table", table}};
  Json report{{"config", c.to_json()}, {"status", r.status}, {"summary", r.summary}};
  r.files.push_back(write_file(c, "orbit.json", dump(report)));
  return r;
}

ExperimentResult run_counterexample(const ExperimentConfig& c) {
  require(c.mode != ScalarMode::Float, ErrorCode::InvalidArgument, "counterexample is exact only; use --mode exact");
  auto g = g_star(rational_list(c, "g", {Rational(2)}));
  auto h = g_star(rational_list(c, "h", {Rational(2)}));
  auto rows = param<long>(c, "rows", 10);
  require(rows > 0, ErrorCode::InvalidArgument, "rows must be positive");
  auto rep = counterexample_gap(g, h);

  // Dense evaluation of the gap on [1/2, 1] as a cross-check of the extremum.
  double grid_x = 0.5, grid_v = 0;
  for (int k = 0; k <= 10000; ++k) {
    double x = 0.5 + 0.5 * k / 10000;
    double v = rep.gap.eval(x);
    if (std::abs(v) > std::abs(grid_v)) {
      grid_v = v;
      grid_x = x;
    }
  }
  bool extremum_ok = std::abs(grid_v - rep.extremum_value.get_d()) < 1e-9;

  // g_k: every prefix entry of g raised by 2^-k.
  std::vector<GroupElement> gk;
  for (long k = 1; k <= rows; ++k) {
    std::vector<Rational> p;
    Index last = g.seq().tail_start();
    for (Index n = 1; n < last; ++n) p.push_back(g.at(n).real_part() + pow(Rational(1, 2), static_cast<unsigned long>(k)));
    gk.push_back(g_star(p));
  }
  auto bound = embed_continuity_bound(gk, g);
  std::string csv = csv_line({"k", "lhs_fraction", "lhs_decimal", "rhs_fraction", "rhs_decimal", "holds"});
  Json table = Json::array();
  bool bound_ok = true;
  for (std::size_t k = 0; k < bound.size(); ++k) {
    const auto& b = bound[k];
    bound_ok = bound_ok && b.holds;
    csv += csv_line({std::to_string(k + 1), to_string(b.lhs), to_decimal(b.lhs), to_string(b.rhs), to_decimal(b.rhs),
                     b.holds ? "1" : "0"});
    table.push_back({{"k", k + 1}, {"sup_diff", exact_json(b.lhs)}, {"two_rho_star", exact_json(b.rhs)}, {"holds", b.holds}});
  }

  ExperimentResult r;
  finish(r, rep.identity_holds && extremum_ok && bound_ok);
  r.summary = {{"gap", rep.gap.to_string()},
               {"identity_holds", rep.identity_holds},
               {"extremum_x", exact_json(rep.extremum_x)},
               {"extremum_value", exact_json(rep.extremum_value)},
               {"extremum_kind", rep.extremum_kind},
               {"bound_holds", bound_ok}};
  Json report{{"config", c.to_json()},
              {"status", r.status},
              {"g", to_json(g.seq())},
              {"h", to_json(h.seq())},
              {"gap", poly_json(rep.gap)},
              {"identity", poly_json(rep.identity)},
              {"identity_holds", rep.identity_holds},
              {"gap_at_3/4", exact_json(rep.gap(Rational(3, 4)))},
              {"extremum", {{"x", exact_json(rep.extremum_x)}, {"value", exact_json(rep.extremum_value)},
                            {"kind", rep.extremum_kind}, {"grid_x", grid_x}, {"grid_value", grid_v},
                            {"grid_agrees", extremum_ok}}},
              {"continuity_bound", table}};
  r.files.push_back(write_file(c, "counterexample.json", dump(report)));
  r.files.push_back(write_file(c, "counterexample_bound.csv", csv));
  return r;
}

namespace {

Json density_record(const ActionCtx& ctx, const char* ctx_name, const TailedSeq& x, const TailedSeq& y, Index N,
                    const Rational& tol) {
  auto w = density_witness(ctx, x, y, N, tol);
  return {{"operation", "density_witness"},
          {"inputs", {{"action", ctx_name}, {"x", to_json(x)}, {"y", to_json(y)}, {"N", N}}},
          {"witness", {{"h", to_json(w.h.seq())}}},
          {"residual", to_json(w.residual)},
          {"verdict", {{"residual_is_acted_distance", w.residual == l1_dist(act(ctx, w.h, x), y, tol)}}}};
}

Json escape_record(const MeagerSetParams& p, const TailedSeq& z, Index N, const Rational& tol) {
  auto e = meager_escape(p, z, N, tol);
  Json verdict{{"member", e.verdict.member}, {"reason", e.verdict.reason}};
  return {{"operation", "meager_escape"},
          {"inputs", {{"center", to_json(p.center)}, {"ratio_bound", to_string(p.ratio_bound)}, {"z", to_json(z)}, {"N", N}}},
          {"witness", {{"z_N", to_json(e.z_n)}}},
          {"residual", to_json(e.residual)},
          {"verdict", verdict}};
}

Json cert_record(const StrongApproxCert& cert) {
  return {{"operation", "strong_approx_cert"},
          {"inputs", {{"eps", to_string(cert.eps)}}},
          {"witness", to_json(cert)},
          {"residual", exact_json(cert.witness.residual)},
          {"verdict", {{"residual_below_eps", cert.witness.residual < cert.eps}}}};
}

ActionCtx action_by_name(const std::string& name) {
  if (name == "G_on_P") return ActionCtx::G_on_P();
  if (name == "H_on_L1") return ActionCtx::H_on_L1();
  if (name == "Gstar_on_Pstar") return ActionCtx::Gstar_on_Pstar();
  fail(ErrorCode::Parse, "unknown action '" + name + "'");
}

Enclosure enclosure_from_json(const Json& j) {
  if (j.contains("fraction")) {
    Rational v = parse_rational(j.at("fraction").get<std::string>());
    return Enclosure::exact(v);
  }
  return {parse_rational(j.at("lo").get<std::string>()), parse_rational(j.at("hi").get<std::string>())};
}

// Re-derives one record from its inputs and witness alone.
std::vector<std::string> check_record(const Json& rec) {
  std::vector<std::string> failures;
  auto expect = [&](bool ok, const char* what) {
    if (!ok) failures.push_back(what);
  };
  const auto op = rec.at("operation").get<std::string>();
  const auto& in = rec.at("inputs");
  const auto& wit = rec.at("witness");
  if (op == "density_witness") {
    auto ctx = action_by_name(in.at("action").get<std::string>());
    auto x = seq_from_json(in.at("x")), y = seq_from_json(in.at("y"));
    auto N = in.at("N").get<Index>();
    auto hseq = seq_from_json(wit.at("h"));
    GroupElement h(hseq, ctx.group.domain);
    bool shape = true;
    for (Index n = x.base(); n <= N; ++n) shape = shape && h.at(n) * x.entry(n) == y.entry(n);
    shape = shape && h.seq().trimmed().tail_start() <= N + 1 && h.at(N + 1).is_one();
    expect(shape, "h agrees with y/x up to N and is 1 afterwards");
    auto res = enclosure_from_json(rec.at("residual"));
    auto acted = l1_dist(act(ctx, h, x), y);
    expect(res.is_exact() ? acted.is_exact() && acted.value() == res.value() : overlaps(acted, res),
           "residual equals the distance from h . x to y");
  } else if (op == "meager_escape") {
    MeagerSetParams p{seq_from_json(in.at("center")), parse_rational(in.at("ratio_bound").get<std::string>())};
    auto z = seq_from_json(in.at("z"));
    auto N = in.at("N").get<Index>();
    auto zn = seq_from_json(wit.at("z_N"));
    bool agrees = true;
    for (Index n = z.base(); n <= N; ++n) agrees = agrees && zn.entry(n) == z.entry(n);
    expect(agrees, "z_N agrees with z up to N");
    expect(!meager_member(p, zn).member, "z_N lies outside M");
    auto res = enclosure_from_json(rec.at("residual"));
    auto d = l1_dist(zn, z);
    expect(res.is_exact() ? d.is_exact() && d.value() == res.value() : overlaps(d, res), "residual equals ||z_N - z||_1");
  } else if (op == "strong_approx_cert") {
    auto cc = verify_cert(wit);
    for (const auto& f : cc.failures) failures.push_back("certificate: " + f);
  } else {
    failures.push_back("unknown operation '" + op + "'");
  }
  return failures;
}

}  // namespace

ExperimentResult run_witness(const ExperimentConfig& c) {
  require(c.mode != ScalarMode::Float, ErrorCode::InvalidArgument, "witness records are exact; use --mode exact");
  long n_raw = param<long>(c, "N", 3);
  require(n_raw >= 0, ErrorCode::InvalidArgument, "N must be nonnegative");
  auto N = static_cast<Index>(n_raw);
  auto instances = param<std::size_t>(c, "instances", 3);
  auto bound = rational_param(c, "ratio_bound", Rational(3, 2));
  auto eps = rational_param(c, "eps", Rational(1, 100));
  require(eps > 0, ErrorCode::InvalidArgument, "eps must be positive");

  std::mt19937_64 rng(c.seed);
  Json records = Json::array();
  auto x0 = geometric_seq(0, "1/2", "1/2"), y0 = geometric_seq(0, "1/3", "1/3");
  records.push_back(density_record(ActionCtx::H_on_L1(), "H_on_L1", x0, y0, N, c.tol));
  MeagerSetParams p0{x0, bound};
  records.push_back(escape_record(p0, y0, N, c.tol));
  auto P = half_geometric();
  for (std::size_t i = 0; i < instances; ++i) {
    auto x = rand_point(rng), y = rand_point(rng), z = rand_point(rng);
    records.push_back(density_record(ActionCtx::G_on_P(), "G_on_P", x, y, N, c.tol));
    records.push_back(escape_record(MeagerSetParams{x, bound}, z, N, c.tol));
    auto Q = rand_measure(rng);
    auto z1 = normalize(P, rand_point(rng)), z2 = normalize(P, rand_point(rng));
    records.push_back(cert_record(make_strong_approx_cert(P, Q, eps, z1, z2)));
  }

  Json doc{{"config", c.to_json()}, {"records", records}};
  auto check = check_witness_records(doc);
  ExperimentResult r;
  finish(r, check.exit_code == 0);
  r.summary = {{"records", records.size()}, {"self_check", check.summary}};
  r.files.push_back(write_file(c, "witness.json", dump(doc)));
  return r;
}

ExperimentResult check_witness_records(const Json& doc) {
  require(doc.is_object() && doc.contains("records") && doc.at("records").is_array(), ErrorCode::Parse,
          "witness file must hold a 'records' list");
  std::size_t passed = 0;
  Json failing = Json::array();
  const auto& recs = doc.at("records");
  for (std::size_t i = 0; i < recs.size(); ++i) {
    std::vector<std::string> failures;
    try {
      failures = check_record(recs[i]);
    } catch (const Json::exception& e) {
      failures.push_back(std::string("malformed record: ") + e.what());
    } catch (const Error& e) {
      failures.push_back(e.what());
    }
    if (failures.empty()) ++passed;
    else failing.push_back({{"record", i}, {"failures", failures}});
  }
  ExperimentResult r;
  finish(r, failing.empty());
  r.summary = {{"records", recs.size()}, {"passed", passed}, {"failing", failing}};
  return r;
}

ExperimentResult check_witness_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  require(static_cast<bool>(f), ErrorCode::InvalidArgument, "cannot read '" + path + "'");
  Json doc;
  try {
    doc = Json::parse(f);
  } catch (const Json::exception& e) {
    fail(ErrorCode::Parse, "'" + path + "' is not valid JSON: " + e.what());
  }
  return check_witness_records(doc);
}

}  // namespace polact
