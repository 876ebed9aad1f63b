/* C interface to the polact library. All handles are opaque; every call that
 * can fail returns a pa_status and leaves a message for pa_last_error().
 * Strings returned through char** are owned by the caller and released with
 * pa_string_free. */
#ifndef POLACT_H
#define POLACT_H

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define PA_API __declspec(dllexport)
#else
#define PA_API __attribute__((visibility("default")))
#endif

typedef enum pa_status {
  PA_OK = 0,
  PA_ERR_INVALID_ARGUMENT = 1,
  PA_ERR_PARSE = 2,
  PA_ERR_MODE_MISMATCH = 3,
  PA_ERR_DOMAIN = 4,
  PA_ERR_INVARIANT = 5,
  PA_ERR_UNDECIDED = 6,
  PA_ERR_INDEX = 7,
  PA_ERR_NULL = 8,
  PA_ERR_INTERNAL = 9
} pa_status;

typedef struct pa_seq pa_seq;
typedef struct pa_report pa_report;

PA_API const char* pa_version(void);
/* Message of the last failed call on this thread; empty after a success. */
PA_API const char* pa_last_error(void);
PA_API void pa_string_free(char* s);

/* Sequences in the JSON text record format. */
PA_API pa_status pa_seq_parse(const char* text, pa_seq** out);
PA_API void pa_seq_free(pa_seq* s);
PA_API pa_status pa_seq_serialize(const pa_seq* s, char** out);
/* Enclosures come back as JSON: {"fraction","decimal"} when exact,
 * {"lo","hi",...} otherwise. tol may be NULL for the default 1/10^12. */
PA_API pa_status pa_seq_l1_norm(const pa_seq* s, const char* tol, char** out_json);
PA_API pa_status pa_seq_l1_dist(const pa_seq* a, const pa_seq* b, const char* tol, char** out_json);
/* rho for group elements; action is "G_on_P", "H_on_L1" or "Gstar_on_Pstar"
 * and selects the group. */
PA_API pa_status pa_group_rho(const char* action, const pa_seq* g, const pa_seq* h, const char* tol, char** out_json);
PA_API pa_status pa_act(const char* action, const pa_seq* g, const pa_seq* x, pa_seq** out);

/* Experiments. config_json is a flat JSON object (see the README). A run that
 * completes returns PA_OK even when invariants fail; the report carries the
 * exit code (0 pass, 2 invariant failure). */
PA_API pa_status pa_experiment_run(const char* config_json, pa_report** out);
PA_API pa_status pa_witness_check(const char* path, pa_report** out);
PA_API int pa_report_exit_code(const pa_report* r);
/* {"status", "exit_code", "summary", "files"} */
PA_API pa_status pa_report_json(const pa_report* r, char** out);
PA_API void pa_report_free(pa_report* r);

#ifdef __cplusplus
}
#endif

#endif
