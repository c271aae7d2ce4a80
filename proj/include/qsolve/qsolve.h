/* C interface to the spatial constraint solver.
 *
 * All functions returning qs_status put a malloc'd diagnostic into *error_msg
 * (when non-NULL) on failure; release it with qs_string_free. Objects behind
 * opaque handles are immutable once created and may be shared across threads;
 * each qs_solve call owns its backend subprocess.
 */
#ifndef QSOLVE_H
#define QSOLVE_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qs_status {
  QS_OK = 0,
  QS_ERR_ARGUMENT = 1,  /* NULL handle or malformed option */
  QS_ERR_PARSE = 2,     /* problem text does not parse */
  QS_ERR_VALIDATE = 3,  /* parsed but ill-typed */
  QS_ERR_BACKEND = 4,   /* SMT subprocess could not run */
  QS_ERR_RENDER = 5,    /* witness not renderable or file not writable */
  QS_ERR_INTERNAL = 6
} qs_status;

typedef enum qs_verdict {
  QS_CONSISTENT = 0,  /* also: entailed, for sufficiency problems */
  QS_INCONSISTENT = 1,
  QS_UNKNOWN = 2
} qs_verdict;

typedef enum qs_mode { QS_MODE_NAIVE = 0, QS_MODE_PRUNED = 1 } qs_mode;

typedef struct qs_problem qs_problem;
typedef struct qs_result qs_result;

typedef struct qs_options {
  qs_mode mode;             /* default pruned */
  const char* solver_path;  /* NULL: $QS_SOLVER_PATH */
  double timeout_s;         /* <= 0: 600 */
  const char* emit_smt_dir; /* non-NULL: keep SMT-LIB scripts here */
} qs_options;

void qs_options_init(qs_options* opts);

/* Parsing and inspection */
qs_status qs_problem_parse(const char* text, qs_problem** out, char** error_msg);
void qs_problem_free(qs_problem* p);
int qs_problem_is_sufficiency(const qs_problem* p);
int qs_problem_free_var_count(const qs_problem* p);
/* Canonical round-trip text; qs_string_free the result. */
char* qs_problem_format(const qs_problem* p);

/* Solving */
qs_status qs_solve(const qs_problem* p, const qs_options* opts, qs_result** out,
                   char** error_msg);
void qs_result_free(qs_result* r);
qs_verdict qs_result_verdict(const qs_result* r);
/* Unknown reason, or "" otherwise; owned by the result. */
const char* qs_result_reason(const qs_result* r);
double qs_result_time_s(const qs_result* r);
/* Verdict, reason, witness (exact rationals and double approximations), and
 * provenance (mode, pruning case, subcases, components, free-variable counts)
 * as a JSON object; qs_string_free the result. */
char* qs_result_json(const qs_result* r);

/* SVG of the witness (consistent results only). */
qs_status qs_render_svg(const qs_problem* p, const qs_result* r, const char* path,
                        char** error_msg);

void qs_string_free(char* s);
const char* qs_version(void);

#ifdef __cplusplus
}
#endif

#endif /* QSOLVE_H */
