/* gpr — generalized orthogonal Procrustes toolkit: SDP relaxation, rounding,
 * local refinement, dual certificates, and Monte-Carlo rank-recovery sweeps.
 *
 * This header is the only supported external surface of the shared library.
 * All functions returning int use 0 for success and a gpr_status code
 * otherwise; gpr_last_error() describes the most recent failure on the
 * calling thread.
 */
#ifndef GPR_H
#define GPR_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

enum gpr_status {
  GPR_OK = 0,
  GPR_ERR_INVALID_ARG = 1,
  GPR_ERR_NUMERICAL = 2,
  GPR_ERR_IO = 3,
  GPR_ERR_INTERNAL = 4
};

const char* gpr_version(void);

/* Message for the last failing call on this thread; empty string if none. */
const char* gpr_last_error(void);

/* ------------------------------------------------------------------ */
/* Solver configuration                                                */

typedef struct gpr_solver_config gpr_solver_config;

gpr_solver_config* gpr_solver_config_new(void);
void gpr_solver_config_free(gpr_solver_config* cfg);

/* Keys: "rho", "eps_primal", "eps_dual", "eps" (sets both), "max_iters",
 * "rank_rel_tol", "cert_stat_tol", "cert_psd_tol", "balancing" (0/1). */
int gpr_solver_config_set(gpr_solver_config* cfg, const char* key, double value);
int gpr_solver_config_get(const gpr_solver_config* cfg, const char* key,
                          double* value);

/* ------------------------------------------------------------------ */
/* Instances                                                           */

typedef struct gpr_instance gpr_instance;

/* mode is "identity" or "haar". */
int gpr_instance_generate(int d, int n, int m, double sigma, uint64_t seed,
                          const char* mode, gpr_instance** out);

/* Text format: header line "d n m sigma", then n blocks of d lines of m
 * whitespace-separated values (the measurements). */
int gpr_instance_read_text(const char* path, gpr_instance** out);
int gpr_instance_write_text(const gpr_instance* inst, const char* path);

void gpr_instance_free(gpr_instance* inst);

int gpr_instance_dims(const gpr_instance* inst, int* d, int* n, int* m,
                      double* sigma);

/* ------------------------------------------------------------------ */
/* Single-trial pipeline                                               */

typedef struct gpr_trial_record {
  double sigma;
  int trial_index;
  uint64_t seed;
  int recovered; /* 0 or 1 */
  double sdp_objective;
  double refined_objective;
  double duality_gap;
  double spectrum_gap;
  double cert_min_eig;
  double cert_stationarity;
  int estimated_rank;
  int admm_iterations;
  char status[48];
} gpr_trial_record;

/* Generate an instance from (d, n, m, sigma, seed, mode) and run
 * solve -> round -> refine -> certify. */
int gpr_run_trial(int d, int n, int m, double sigma, uint64_t seed,
                  const char* mode, const gpr_solver_config* cfg,
                  gpr_trial_record* out);

/* Same pipeline on an existing instance (e.g. one read from disk). */
int gpr_solve_instance(const gpr_instance* inst, const gpr_solver_config* cfg,
                       gpr_trial_record* out);

/* ------------------------------------------------------------------ */
/* Monte-Carlo sweep                                                   */

typedef struct gpr_sweep_result gpr_sweep_result;

/* Fills buf with the library's calibrated default noise grid and returns its
 * length. If buf is NULL or cap is too small, only the length is reported. */
int gpr_default_sigma_grid(double* buf, int cap);

/* Called after each completed sigma; partial holds records for the completed
 * prefix of the grid and is valid only during the call. */
typedef void (*gpr_sweep_progress_fn)(const gpr_sweep_result* partial,
                                      int sigmas_done, int sigmas_total,
                                      void* user);

/* trials per sigma, seeds derived from master_seed by (sigma, trial) index.
 * jobs = 0 selects the hardware thread count; results are independent of
 * jobs. */
int gpr_run_sweep(int d, int n, int m, const double* sigma_grid, int n_sigma,
                  int trials, uint64_t master_seed, const char* mode,
                  const gpr_solver_config* cfg, int jobs,
                  gpr_sweep_progress_fn progress, void* user,
                  gpr_sweep_result** out);

void gpr_sweep_result_free(gpr_sweep_result* res);

int gpr_sweep_num_sigmas(const gpr_sweep_result* res);
double gpr_sweep_sigma(const gpr_sweep_result* res, int i);
double gpr_sweep_fraction(const gpr_sweep_result* res, int i);
int gpr_sweep_num_records(const gpr_sweep_result* res);
int gpr_sweep_record(const gpr_sweep_result* res, int i, gpr_trial_record* out);

/* Largest grid sigma with recovery fraction >= 0.95; NaN if none. */
double gpr_sweep_threshold(const gpr_sweep_result* res);

int gpr_sweep_write_csv(const gpr_sweep_result* res, const char* path);
int gpr_sweep_write_svg(const gpr_sweep_result* res, const char* path);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* GPR_H */
