/* Decision-sufficient dataset discovery for linear programs: C API.
 *
 * All functions return sdd_status; SDD_OK is 0. On failure,
 * sdd_last_error() carries a thread-local diagnostic message. Objects are
 * opaque handles released with their _free function. Strings returned
 * through char** are heap-allocated; release them with sdd_string_free.
 * Matrices are passed row-major unless noted.
 */
#ifndef SDD_SDD_H
#define SDD_SDD_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sdd_status {
  SDD_OK = 0,
  SDD_ERR_INVALID_ARGUMENT,
  SDD_ERR_PARSE,
  SDD_ERR_IO,
  SDD_ERR_INFEASIBLE,
  SDD_ERR_UNBOUNDED,
  SDD_ERR_SINGULAR,
  SDD_ERR_DEGENERATE_VERTEX,
  SDD_ERR_EMPTY_FIBER,
  SDD_ERR_OUTSIDE_FIBER,
  SDD_ERR_DEGENERATE_RANK,
  SDD_ERR_FIBER_INCONSISTENT,
  SDD_ERR_NO_PROGRESS,
  SDD_ERR_NO_VIOLATED_FACET,
  SDD_ERR_RANK_DEFICIENT,
  SDD_ERR_TOO_LARGE,
  SDD_ERR_NONCONVERGENCE,
  SDD_ERR_BAD_PARAMS,
  SDD_ERR_INTERNAL
} sdd_status;

typedef struct sdd_lp sdd_lp;
typedef struct sdd_prior sdd_prior;

const char* sdd_version(void);
const char* sdd_status_name(sdd_status status);
/* Message from the most recent failing call on this thread ("" if none). */
const char* sdd_last_error(void);
void sdd_string_free(char* s);

/* --- Standard-form LPs ------------------------------------------------- */

sdd_status sdd_lp_create(int m, int d, const double* a_rowmajor,
                         const double* b, int bounded_attested,
                         int nondegenerate_hint, sdd_lp** out);
sdd_status sdd_lp_from_json(const char* json_text, sdd_lp** out);
sdd_status sdd_lp_to_json(const sdd_lp* lp, char** json_out);
sdd_status sdd_lp_dims(const sdd_lp* lp, int* m, int* d);
/* basis_out: m entries; vertex_out: d entries; either may be NULL. */
sdd_status sdd_lp_solve(const sdd_lp* lp, const double* cost, int* basis_out,
                        double* vertex_out, double* objective_out);
void sdd_lp_free(sdd_lp* lp);

/* --- Prior sets and the face-intersection subproblem -------------------- */

sdd_status sdd_prior_ellipsoid(int d, const double* center,
                               const double* sigma_rowmajor, sdd_prior** out);
sdd_status sdd_prior_hpolytope(int rows, int d, const double* g_rowmajor,
                               const double* h, sdd_prior** out);
sdd_status sdd_prior_from_json(const char* json_text, sdd_prior** out);
sdd_status sdd_prior_membership(const sdd_prior* prior, int d, const double* c,
                                int* is_member);
/* queries: d x k column-major (query i at queries + i*d). */
sdd_status sdd_fi_solve(const sdd_prior* prior, int d, int k,
                        const double* queries, const double* measurements,
                        const double* delta, double* min_value,
                        double* minimizer_out);
void sdd_prior_free(sdd_prior* prior);

/* --- Pointwise and cumulative learning --------------------------------- */

/* init_queries: d x n_init column-major or NULL. Emits the certificate as
 * JSON {queries, measurements, basis_indices, decision, iterations,
 * fi_calls, oracle_calls}. */
sdd_status sdd_pointwise_run(const sdd_lp* lp, const sdd_prior* prior,
                             const double* hidden_cost, int n_init,
                             const double* init_queries, int allow_degenerate,
                             char** certificate_json);
/* costs: n x d row-major. Emits CompressionResult JSON. */
sdd_status sdd_cumulative_run(const sdd_lp* lp, const sdd_prior* prior, int n,
                              const double* costs, int allow_degenerate,
                              char** result_json);
/* d_star < 0 when unknown; bound_dstar_out may be NULL. */
sdd_status sdd_certificate_bound(int n, int t_size, double delta, int d_star,
                                 double* bound_t_out, double* bound_dstar_out);
sdd_status sdd_empirical_risk(const sdd_lp* lp, const sdd_prior* prior,
                              const char* dataset_json, int n,
                              const double* costs, int allow_degenerate,
                              double* risk_out);

/* --- Instances and experiments ------------------------------------------ */

/* family: "hypercube" | "grid" | "pispp"; params_json as documented in the
 * README. Returns the instance bundle JSON. */
sdd_status sdd_instance_make(const char* family, const char* params_json,
                             char** instance_json);
sdd_status sdd_grid_oracle_dstar(const char* params_json, int* d_star_out);
/* equivalence_out: 1 iff satisfiability matches the existence of a
 * within-budget modification routing a shortest path through the required
 * arc (checked by the explicit construction over all assignments). */
sdd_status sdd_pispp_check_cnf(const char* dimacs_text, int* satisfiable_out,
                               int* equivalence_out);

/* Experiment drivers; configs are JSON (see README). When the config carries
 * an "out" directory, CSV/JSON (and optionally SVG) artifacts are written
 * there; the summary JSON is always returned. */
sdd_status sdd_learn_experiment(const char* config_json, char** summary_json);
sdd_status sdd_clo_experiment(const char* config_json, char** summary_json);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* SDD_SDD_H */
