/*
 * brx — C API for the binary-relaxation laboratory.
 *
 * Exact solving of tiny 0-1 linear programs, exact expected-penalty
 * evaluation under product Bernoulli relaxations, logistic
 * reparameterization sampling, the pathwise gradient estimator with its
 * bias diagnostics, closed-form 1D/2D potentials and fields, and a
 * stochastic-gradient harness.
 *
 * Conventions:
 *   - every fallible function returns brx_status; outputs go to caller
 *     buffers or opaque handles;
 *   - brx_last_error_detail() returns a thread-local message for the most
 *     recent failure on the calling thread;
 *   - all randomness is driven by explicit 64-bit seeds through a
 *     counter-based generator, so results are bit-reproducible across
 *     platforms and thread counts.
 */

#ifndef BRX_H
#define BRX_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(BRX_BUILD_SHARED)
#define BRX_API __declspec(dllexport)
#else
#define BRX_API __declspec(dllimport)
#endif
#else
#define BRX_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum brx_status {
    BRX_OK = 0,
    BRX_ERR_PARSE = 1,
    BRX_ERR_DIMENSION_MISMATCH = 2,
    BRX_ERR_DIMENSION_TOO_LARGE = 3,
    BRX_ERR_DOMAIN = 4,
    BRX_ERR_INDEX = 5,
    BRX_ERR_INFEASIBLE = 6,
    BRX_ERR_GRID_TOO_LARGE = 7,
    BRX_ERR_LOOP_OUTSIDE_DOMAIN = 8,
    BRX_ERR_NON_CONVERGENCE = 9,
    BRX_ERR_INVALID_ARGUMENT = 10,
} brx_status;

BRX_API const char* brx_status_name(brx_status s);
BRX_API const char* brx_last_error_detail(void);
BRX_API const char* brx_version(void);

/* ---------- instances ---------- */

typedef struct brx_instance brx_instance;

/* a is row-major m x d. */
BRX_API brx_status brx_instance_create(const double* a, const double* b, const double* c,
                                       size_t m, size_t d, brx_instance** out);
/* JSON object with exactly the keys "a" (m arrays of d numbers), "b", "c";
   unknown keys rejected; parse failures carry line/column in the detail. */
BRX_API brx_status brx_instance_from_json(const char* text, brx_instance** out);
BRX_API brx_status brx_instance_from_json_file(const char* path, brx_instance** out);
BRX_API void brx_instance_free(brx_instance* inst);
BRX_API size_t brx_instance_rows(const brx_instance* inst);
BRX_API size_t brx_instance_cols(const brx_instance* inst);
BRX_API brx_status brx_instance_coefficient(const brx_instance* inst, size_t row, size_t col,
                                            double* out);
BRX_API brx_status brx_instance_bound(const brx_instance* inst, size_t row, double* out);
BRX_API brx_status brx_instance_objective(const brx_instance* inst, size_t col, double* out);

/* ---------- exhaustive solving ---------- */

typedef struct brx_solve_report brx_solve_report;

BRX_API brx_status brx_enumerate_solve(const brx_instance* inst, brx_solve_report** out);
BRX_API void brx_solve_report_free(brx_solve_report* r);
BRX_API int brx_solve_report_feasible(const brx_solve_report* r);
BRX_API double brx_solve_report_value(const brx_solve_report* r);
BRX_API size_t brx_solve_report_count(const brx_solve_report* r);
/* writes d bytes of 0/1 into x */
BRX_API brx_status brx_solve_report_point(const brx_solve_report* r, size_t k, uint8_t* x);

BRX_API brx_status brx_is_feasible_corner(const brx_instance* inst, const uint8_t* x, size_t d,
                                          int* out);
/* 2 sqrt(d) ||c|| / min({1} and all positive corner slacks) */
BRX_API brx_status brx_mu_threshold(const brx_instance* inst, double* out);

/* ---------- exact expected penalty ---------- */

/* per-constraint expectations; out has m entries */
BRX_API brx_status brx_expected_penalty(const brx_instance* inst, const double* xhat,
                                        double* out);
/* gradient of the summed expected penalty; out has d entries */
BRX_API brx_status brx_expected_penalty_grad(const brx_instance* inst, const double* xhat,
                                             double* out);
BRX_API brx_status brx_penalized_objective(const brx_instance* inst, const double* xhat,
                                           double mu, double* out);
/* flattened argmin points (count x d) in row-major order; free with
   brx_buffer_free */
BRX_API brx_status brx_grid_argmin_penalized(const brx_instance* inst, double mu,
                                             size_t resolution, double** points, size_t* count);
BRX_API void brx_buffer_free(double* p);
BRX_API brx_status brx_verify_binary_equivalence(const brx_instance* inst, size_t resolution,
                                                 int* out);

/* ---------- logistic reparameterization ---------- */

BRX_API double brx_sigma(double z);
BRX_API brx_status brx_sigma_inv(double p, double* out);
/* d uniforms in (0,1) from positions [start, start+d) of the seeded stream */
BRX_API brx_status brx_sample_noise(uint64_t seed, uint64_t start, size_t d, double* out);
BRX_API brx_status brx_hard_threshold(const double* xhat, const double* eps, size_t d,
                                      uint8_t* out);
BRX_API brx_status brx_soft_relax(const double* xhat, const double* eps, size_t d, double* out);

/* ---------- per-sample losses and Monte Carlo ---------- */

BRX_API brx_status brx_true_violation(const brx_instance* inst, size_t i, const double* xhat,
                                      const double* eps, double* out);
BRX_API brx_status brx_surrogate_violation(const brx_instance* inst, size_t i, const double* xhat,
                                           const double* eps, double* out);
/* out has d entries */
BRX_API brx_status brx_pathwise_gradient(const brx_instance* inst, size_t i, const double* xhat,
                                         const double* eps, double* out);

BRX_API brx_status brx_mc_true_violation(const brx_instance* inst, size_t i, const double* xhat,
                                         size_t n, uint64_t seed, double* mean, double* stderr_);
BRX_API brx_status brx_mc_surrogate_violation(const brx_instance* inst, size_t i,
                                              const double* xhat, size_t n, uint64_t seed,
                                              double* mean, double* stderr_);
/* mean/stderr have d entries */
BRX_API brx_status brx_mc_pathwise_gradient(const brx_instance* inst, size_t i,
                                            const double* xhat, size_t n, uint64_t seed,
                                            double* mean, double* stderr_);
/* CRN central differences of the expected surrogate; grad/stderr have d
   entries */
BRX_API brx_status brx_fd_surrogate_gradient(const brx_instance* inst, size_t i,
                                             const double* xhat, size_t n, uint64_t seed,
                                             double h, double* grad, double* stderr_);
/* paired estimator-vs-oracle comparison; every array has d entries and any
   of them may be NULL */
BRX_API brx_status brx_bias_report(const brx_instance* inst, size_t i, const double* xhat,
                                   size_t n, uint64_t seed, double h, double* estimator_mean,
                                   double* estimator_stderr, double* oracle_grad,
                                   double* oracle_stderr, double* gap, double* gap_stderr);

/* ---------- closed forms ---------- */

BRX_API brx_status brx_f1(double xhat, double* out);
BRX_API brx_status brx_f1_quadrature(double xhat, double* out);
BRX_API brx_status brx_f1_prime(double xhat, double* out);
/* scalar problem a x <= b, a > 0; closed forms need b >= 0 */
BRX_API brx_status brx_potential_1d(double a, double b, double xhat, double* out);
BRX_API brx_status brx_estimator_mean_1d(double a, double b, double xhat, double* out);
BRX_API brx_status brx_effective_potential_1d(double a, double b, double xhat, double* out);
BRX_API brx_status brx_corrected_gradient_1d(double a, double b, double xhat, double eps,
                                             double* out);
/* abscissa of the minimum of the 1D expected surrogate */
BRX_API brx_status brx_potential_minimizer_1d(double a, double b, double tol, double* out);
/* planar problem a1 x1 + a2 x2 <= b with a1 + a2 > b >= a1 >= a2 > 0 */
BRX_API brx_status brx_potential_2d(double a1, double a2, double b, double x1, double x2,
                                    double* out);
/* out has 2 entries */
BRX_API brx_status brx_estimator_mean_field_2d(double a1, double a2, double b, double x1,
                                               double x2, double* out);
BRX_API brx_status brx_curl_2d(double a1, double a2, double b, double x1, double x2, double* out);

typedef enum brx_field_kind {
    BRX_FIELD_ESTIMATOR_MEAN = 0,  /* mean pathwise-gradient field */
    BRX_FIELD_POTENTIAL_GRADIENT = 1, /* finite-difference gradient of the 2D potential */
} brx_field_kind;

/* counterclockwise square-loop line integral */
BRX_API brx_status brx_circulation_2d(double a1, double a2, double b, brx_field_kind field,
                                      double center_x, double center_y, double radius,
                                      size_t points_per_edge, double* out);

/* ---------- stochastic gradient dynamics ---------- */

typedef enum brx_estimator_kind {
    BRX_ESTIMATOR_PATHWISE = 0,
    BRX_ESTIMATOR_PATHWISE_CORRECTED_1D = 1,
    BRX_ESTIMATOR_EXACT_PENALTY = 2,
} brx_estimator_kind;

typedef struct brx_sgd_config {
    double step_size;
    size_t steps;
    size_t batch;
    double delta; /* projection box [delta, 1-delta] */
    uint64_t seed;
    brx_estimator_kind estimator;
} brx_sgd_config;

typedef struct brx_trajectory brx_trajectory;

BRX_API brx_status brx_sgd_run(const brx_instance* inst, double mu, const double* x0,
                               const brx_sgd_config* cfg, brx_trajectory** out);
BRX_API void brx_trajectory_free(brx_trajectory* t);
BRX_API size_t brx_trajectory_length(const brx_trajectory* t);
/* point/gradient have d entries; any output may be NULL */
BRX_API brx_status brx_trajectory_entry(const brx_trajectory* t, size_t k, size_t* step,
                                        double* point, double* gradient);
BRX_API brx_status brx_trajectory_terminal(const brx_trajectory* t, double* point);
BRX_API double brx_trajectory_terminal_objective(const brx_trajectory* t);
/* "step,x1..xd,g1..gd" with a one-line header, 12 significant digits */
BRX_API brx_status brx_trajectory_save_csv(const brx_trajectory* t, const char* path);

/* Monte-Carlo mean of the full-loss pathwise gradient c + mu * sum_i g_i;
   mean/stderr have d entries */
BRX_API brx_status brx_expected_drift(const brx_instance* inst, double mu, const double* xhat,
                                      size_t n, uint64_t seed, double* mean, double* stderr_);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* BRX_H */
