#include "polact/polact.h"

#include <cstring>
#include <string>

#include "polact/actions.hpp"
#include "polact/error.hpp"
#include "polact/experiments.hpp"

struct pa_seq {
  polact::TailedSeq seq;
};

struct pa_report {
  polact::ExperimentResult result;
};

namespace {

thread_local std::string last_error;

pa_status to_status(polact::ErrorCode c) {
  switch (c) {
    case polact::ErrorCode::InvalidArgument: return PA_ERR_INVALID_ARGUMENT;
    case polact::ErrorCode::Parse: return PA_ERR_PARSE;
    case polact::ErrorCode::ModeMismatch: return PA_ERR_MODE_MISMATCH;
    case polact::ErrorCode::Domain: return PA_ERR_DOMAIN;
    case polact::ErrorCode::Invariant: return PA_ERR_INVARIANT;
    case polact::ErrorCode::Undecided: return PA_ERR_UNDECIDED;
    case polact::ErrorCode::Index: return PA_ERR_INDEX;
  }
  return PA_ERR_INTERNAL;
}

// Runs body, translating exceptions into a status and the thread's message.
template <typename F>
pa_status guarded(F&& body) {
  try {
    body();
    last_error.clear();
    return PA_OK;
  } catch (const polact::Error& e) {
    last_error = e.what();
    return to_status(e.code());
  } catch (const polact::Json::exception& e) {
    last_error = e.what();
    return PA_ERR_PARSE;
  } catch (const std::exception& e) {
    last_error = e.what();
    return PA_ERR_INTERNAL;
  }
}

pa_status null_arg(const char* what) {
  last_error = std::string("null argument: ") + what;
  return PA_ERR_NULL;
}

char* copy_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

polact::Rational tol_or_default(const char* tol) {
  return tol ? polact::parse_tolerance(tol) : polact::default_tolerance();
}

polact::ActionCtx action_ctx(const char* name) {
  std::string n = name ? name : "";
  if (n == "G_on_P") return polact::ActionCtx::G_on_P();
  if (n == "H_on_L1") return polact::ActionCtx::H_on_L1();
  if (n == "Gstar_on_Pstar") return polact::ActionCtx::Gstar_on_Pstar();
  polact::fail(polact::ErrorCode::InvalidArgument, "unknown action '" + n + "'");
}

}  // namespace

extern "C" {

const char* pa_version(void) { return "1.0.0"; }

const char* pa_last_error(void) { return last_error.c_str(); }

void pa_string_free(char* s) { delete[] s; }

pa_status pa_seq_parse(const char* text, pa_seq** out) {
  if (!text) return null_arg("text");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] { *out = new pa_seq{polact::parse_seq(text)}; });
}

void pa_seq_free(pa_seq* s) { delete s; }

pa_status pa_seq_serialize(const pa_seq* s, char** out) {
  if (!s) return null_arg("s");
  if (!out) return null_arg("out");
  return guarded([&] { *out = copy_string(polact::serialize(s->seq)); });
}

pa_status pa_seq_l1_norm(const pa_seq* s, const char* tol, char** out_json) {
  if (!s) return null_arg("s");
  if (!out_json) return null_arg("out_json");
  return guarded([&] { *out_json = copy_string(polact::to_json(polact::l1_norm(s->seq, tol_or_default(tol))).dump()); });
}

pa_status pa_seq_l1_dist(const pa_seq* a, const pa_seq* b, const char* tol, char** out_json) {
  if (!a || !b) return null_arg("a/b");
  if (!out_json) return null_arg("out_json");
  return guarded(
      [&] { *out_json = copy_string(polact::to_json(polact::l1_dist(a->seq, b->seq, tol_or_default(tol))).dump()); });
}

pa_status pa_group_rho(const char* action, const pa_seq* g, const pa_seq* h, const char* tol, char** out_json) {
  if (!g || !h) return null_arg("g/h");
  if (!out_json) return null_arg("out_json");
  return guarded([&] {
    auto ctx = action_ctx(action);
    polact::GroupElement a(g->seq, ctx.group.domain), b(h->seq, ctx.group.domain);
    *out_json = copy_string(polact::to_json(polact::rho_sup(a, b, tol_or_default(tol))).dump());
  });
}

pa_status pa_act(const char* action, const pa_seq* g, const pa_seq* x, pa_seq** out) {
  if (!g || !x) return null_arg("g/x");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] {
    auto ctx = action_ctx(action);
    polact::GroupElement e(g->seq, ctx.group.domain);
    *out = new pa_seq{polact::act(ctx, e, x->seq)};
  });
}

pa_status pa_experiment_run(const char* config_json, pa_report** out) {
  if (!config_json) return null_arg("config_json");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] {
    auto config = polact::ExperimentConfig::from_json(polact::Json::parse(config_json));
    *out = new pa_report{polact::run_experiment(config)};
  });
}

pa_status pa_witness_check(const char* path, pa_report** out) {
  if (!path) return null_arg("path");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] { *out = new pa_report{polact::check_witness_file(path)}; });
}

int pa_report_exit_code(const pa_report* r) { return r ? r->result.exit_code : 1; }

pa_status pa_report_json(const pa_report* r, char** out) {
  if (!r) return null_arg("r");
  if (!out) return null_arg("out");
  return guarded([&] { *out = copy_string(r->result.to_json().dump(2)); });
}

void pa_report_free(pa_report* r) { delete r; }

}  // extern "C"
