/*
 * devbound -- certified upper bounds on deviations of points and
 * windowed means from a weighted mean, with weight-regime and
 * function-class validators and brute-force verification.
 *
 * C API over the C++ core.  Samples are opaque handles; every call
 * returns a status code and leaves a human-readable detail message
 * retrievable with devbound_last_error().  Report-producing calls hand
 * back a heap-allocated JSON string; free it with devbound_string_free().
 */

#ifndef DEVBOUND_H
#define DEVBOUND_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum devbound_status {
    DEVBOUND_OK = 0,
    DEVBOUND_ERR_INVALID_INPUT = 1,  /* malformed data (lengths, sums, NaN) */
    DEVBOUND_ERR_DOMAIN = 2,         /* argument outside a bound's hypotheses */
    DEVBOUND_ERR_REGIME = 3,         /* weights fail the required regime */
    DEVBOUND_ERR_DEGENERATE_WINDOW = 4,
    DEVBOUND_ERR_ORDER = 5,          /* data not sorted as required */
    DEVBOUND_ERR_CONFIG = 6,         /* inconsistent request/configuration */
    DEVBOUND_ERR_INTERNAL = 7
} devbound_status;

typedef struct devbound_sample devbound_sample;

/* Values x_1..x_n with weights t_1..t_n; the weights must sum to 1
 * within 1e-9 and n must be at least 2.  Sign constraints on weights are
 * checked by the individual bounds, not here. */
devbound_status devbound_sample_create(const double* values,
                                       const double* weights, size_t n,
                                       devbound_sample** out_sample);

/* Same, with explicit tolerance overrides (weight-sum slack, relative
 * and absolute inequality slack). */
devbound_status devbound_sample_create_tol(const double* values,
                                           const double* weights, size_t n,
                                           double eps_sum, double eps_ineq_rel,
                                           double eps_ineq_abs,
                                           devbound_sample** out_sample);

void devbound_sample_free(devbound_sample* sample);

/* Detail message for the most recent failure on this thread. */
const char* devbound_last_error(void);

void devbound_string_free(char* s);

/* ---- scalar entry points ---------------------------------------------- */

devbound_status devbound_weighted_mean(const devbound_sample* sample,
                                       double* out);

devbound_status devbound_central_power_moment(const devbound_sample* sample,
                                              double two_r, double* out);

/* sqrt((n-1)(b - a^2)); equal weights only. */
devbound_status devbound_samuelson_bound(const devbound_sample* sample,
                                         double* out);

devbound_status devbound_t_constant(double alpha0, double p, double* out);

devbound_status devbound_weighted_power_bound(const devbound_sample* sample,
                                              double p, double* out);

/* Windowed-mean bound on |x_{k,j} - mean| (1-based inclusive window).
 * chain is "raw_moment", "power_jensen_gap" or "function_gap";
 * function_name (registry name, e.g. "power:4") is required for the
 * function_gap chain and ignored otherwise (may be NULL). */
devbound_status devbound_window_bound(const devbound_sample* sample, size_t k,
                                      size_t j, double r, const char* chain,
                                      const char* function_name, double* out);

/* Jensen-Steffensen prefix bound for admissible split index k. */
devbound_status devbound_js_prefix_bound(const devbound_sample* sample,
                                         size_t k, double r, double* out);

devbound_status devbound_exact_max_deviation(const devbound_sample* sample,
                                             double* out_value,
                                             size_t* out_index);

/* ---- JSON report entry points ----------------------------------------- */

/* Computes the bounds described by request_json and returns a report.
 * Request fields: "theorem" (1,2,4,5,6,7), "r" (number or array),
 * "p", "window" ("all" or "k:j"), "k" ("auto" or index), "chain",
 * "function", "m", "digest".  Unused fields may be omitted. */
devbound_status devbound_bound_report_json(const devbound_sample* sample,
                                           const char* request_json,
                                           char** out_json);

/* Runs every applicable inequality; out_all_pass is 1 when no check
 * failed.  request_json may be NULL or "{}"; recognized field: "r"
 * (number or array of r >= 1, default [1, 2]). */
devbound_status devbound_verify_json(const devbound_sample* sample,
                                     const char* request_json, char** out_json,
                                     int* out_all_pass);

/* Seeded tightness fuzzer.  config_json fields: "seed", "trials",
 * "n_min", "n_max", "r_set", "regime" ("simplex", "equal",
 * "steffensen"), "distribution" ("uniform", "heavy_tail", "clustered").
 * out_violation_count receives the number of bound violations found
 * (expected 0). */
devbound_status devbound_fuzz_json(const char* config_json, char** out_json,
                                   int* out_violation_count);

/* Regime classification and admissible split indices for a raw weight
 * vector (need not sum to 1 for the report to be produced). */
devbound_status devbound_check_weights_json(const double* weights, size_t n,
                                            char** out_json);

/* Function-class checker.  class_name is "superquadratic",
 * "uniform_convex" or "modulus"; modulus_name (e.g. "power:2") is
 * required for "uniform_convex", grid_size 0 picks the default. */
devbound_status devbound_check_function_json(const char* function_name,
                                             const char* class_name,
                                             const char* modulus_name,
                                             unsigned grid_size,
                                             char** out_json);

#ifdef __cplusplus
}
#endif

#endif /* DEVBOUND_H */
