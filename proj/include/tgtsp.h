/*
 * tgtsp — trajectory-graph traveling-salesman solver, C API.
 *
 * Continuous-time TSP variants over region-valued cities: scenarios are
 * parsed from JSON, solved by direct collocation plus an augmented-Lagrangian
 * NLP, and verified exactly against the nonsmooth visit/dwell/degree
 * functionals. All objects are opaque handles; every string returned through
 * a char** out-parameter is heap-allocated and must be released with
 * tg_string_free.
 */
#ifndef TGTSP_H
#define TGTSP_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tg_status {
  TG_OK = 0,
  TG_ERR_PARSE = 1,       /* malformed input text */
  TG_ERR_INVALID = 2,     /* invariant violation in otherwise valid input */
  TG_ERR_UNSUPPORTED = 3, /* valid input outside the implemented feature set */
  TG_ERR_IO = 4,          /* file system failure */
  TG_ERR_INTERNAL = 5     /* unexpected failure */
} tg_status;

typedef struct tg_scenario tg_scenario;
typedef struct tg_trajectory tg_trajectory;
typedef struct tg_run tg_run;

typedef struct tg_solve_options {
  int nodes;              /* collocation nodes (>= 20 for real solves) */
  int multistart;         /* number of heuristic seeds solved in parallel */
  unsigned long long rng_seed;
  int max_outer;          /* augmented-Lagrangian outer iterations */
  int max_inner;          /* quasi-Newton iterations per outer */
  double tol_feas;
  double tol_grad;
  double penalty_init;
  double penalty_growth;
  double zone_margin;     /* inflation factor on forbidden-zone semi-axes */
  double eps_dwell;       /* surrogate dwell that counts as a visit */
  double kappa;           /* score saturation scale */
  double dwell_margin;    /* extra smoothed dwell demanded over dwell_min */
  int quad_refine;        /* quadrature sub-samples per interval */
  const double* eps_schedule; /* absolute smoothing lengths, or NULL */
  int eps_schedule_len;
  const char* problem_override; /* run as this problem kind, or NULL */
  const char* scenario_path;    /* label recorded in the manifest, or NULL */
} tg_solve_options;

/* Fill every field with the library defaults. */
void tg_solve_options_defaults(tg_solve_options* opts);

/* ---- scenarios ---------------------------------------------------------- */
tg_status tg_scenario_parse(const char* json_text, tg_scenario** out,
                            char** errmsg);
tg_status tg_scenario_serialize(const tg_scenario* s, char** json_out);
int tg_scenario_city_count(const tg_scenario* s);
void tg_scenario_free(tg_scenario* s);

/* ---- trajectories ------------------------------------------------------- */
tg_status tg_trajectory_parse(const char* json_text, tg_trajectory** out,
                              char** errmsg);
tg_status tg_trajectory_serialize(const tg_trajectory* t, char** json_out);
int tg_trajectory_node_count(const tg_trajectory* t);
void tg_trajectory_free(tg_trajectory* t);

/* ---- solving ------------------------------------------------------------ */
/* Runs the full pipeline (seed, transcribe, continuation solve, verify).
 * Returns TG_OK whenever a run completed, feasible or not; inspect
 * tg_run_feasible for the verdict. */
tg_status tg_solve(const tg_scenario* s, const tg_solve_options* opts,
                   tg_run** out, char** errmsg);
int tg_run_feasible(const tg_run* r);
tg_status tg_run_trajectory(const tg_run* r, tg_trajectory** out);
tg_status tg_run_report_json(const tg_run* r, char** json_out);
tg_status tg_run_manifest_json(const tg_run* r, char** json_out);
void tg_run_free(tg_run* r);

/* ---- verification and export -------------------------------------------- */
/* Exact re-verification of a trajectory against a scenario. passes (may be
 * NULL) receives 1 when the trajectory is feasible and, for the TSP-style
 * kinds, Hamiltonian. */
tg_status tg_verify(const tg_scenario* s, const tg_trajectory* t,
                    char** report_json, int* passes, char** errmsg);
tg_status tg_export_csv(const tg_scenario* s, const tg_trajectory* t,
                        char** out, char** errmsg);
tg_status tg_export_svg(const tg_scenario* s, const tg_trajectory* t,
                        char** out, char** errmsg);

void tg_string_free(char* s);
const char* tg_version(void);

#ifdef __cplusplus
}
#endif

#endif /* TGTSP_H */
