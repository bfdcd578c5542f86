/* brequant: minimax Bayes-risk-error quantization of detection priors.
 *
 * C interface to the shared library. All functions returning bq_status set
 * a thread-local error message retrievable with bq_last_error() on failure.
 * Objects returned through out-parameters are owned by the caller and must
 * be released with the matching *_free function.
 */
#ifndef BREQUANT_H
#define BREQUANT_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  define BQ_API __declspec(dllexport)
#else
#  define BQ_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bq_status {
    BQ_OK = 0,
    BQ_ERROR_INVALID_ARGUMENT = 1,
    BQ_ERROR_DOMAIN = 2,
    BQ_ERROR_BRACKET = 3,
    BQ_ERROR_DEGENERATE = 4,
    BQ_ERROR_NO_CONVERGENCE = 5,
    BQ_ERROR_OUT_OF_IMAGE = 6,
    BQ_ERROR_INSUFFICIENT_DATA = 7,
    BQ_ERROR_PARSE = 8,
    BQ_ERROR_INTERNAL = 9
} bq_status;

typedef struct bq_model bq_model;         /* a detection problem */
typedef struct bq_quantizer bq_quantizer; /* a designed quantizer */
typedef struct bq_sweep bq_sweep;         /* distortion-vs-K samples */

BQ_API const char* bq_version(void);
BQ_API const char* bq_status_name(bq_status status);
/* Message of the most recent failure on this thread; empty if none. */
BQ_API const char* bq_last_error(void);

/* ---- models ---------------------------------------------------------- */

BQ_API bq_status bq_model_gaussian_create(double mu, double sigma2, double c10,
                                          double c01, bq_model** out);
BQ_API bq_status bq_model_exponential_create(double lambda0, double lambda1,
                                             double lambda2, bq_model** out);
BQ_API void bq_model_free(bq_model* model);
BQ_API int bq_model_hypothesis_count(const bq_model* model);

/* Priors and weights are full barycentric vectors of length M. */
BQ_API bq_status bq_model_risk(const bq_model* model, const double* prior, size_t len,
                               double* out);
BQ_API bq_status bq_model_risk_mismatched(const bq_model* model, const double* prior,
                                          const double* weight, size_t len, double* out);
BQ_API bq_status bq_model_divergence(const bq_model* model, const double* prior,
                                     const double* weight, size_t len, double* out);
/* Decision weight minimizing the worst-case divergence (K = 1). */
BQ_API bq_status bq_model_minimax_weight(const bq_model* model, double* weight_out,
                                         double* worst_out);

/* ---- quantizer design ------------------------------------------------ */

typedef enum bq_objective {
    BQ_OBJECTIVE_MINIMAX = 0, /* minimize the worst divergence */
    BQ_OBJECTIVE_MEAN = 1     /* minimize the mean divergence (binary only) */
} bq_objective;

typedef struct bq_design_options {
    double tol;         /* parameter-change tolerance; <= 0 selects the default */
    int max_iterations; /* <= 0 selects the default */
    int multistart;     /* <= 0 selects the default */
    uint64_t seed;
    int objective;      /* bq_objective */
} bq_design_options;

BQ_API void bq_design_options_defaults(bq_design_options* opts);

BQ_API bq_status bq_design(const bq_model* model, int cells,
                           const bq_design_options* opts, bq_quantizer** out);
BQ_API void bq_quantizer_free(bq_quantizer* q);

BQ_API int bq_quantizer_hypothesis_count(const bq_quantizer* q);
BQ_API int bq_quantizer_cell_count(const bq_quantizer* q);
BQ_API int bq_quantizer_converged(const bq_quantizer* q);
BQ_API int bq_quantizer_iterations(const bq_quantizer* q);
BQ_API double bq_quantizer_max_divergence(const bq_quantizer* q);
/* Present only after a mean-objective design; NaN otherwise. */
BQ_API double bq_quantizer_mean_divergence(const bq_quantizer* q);

/* weight_out must hold M doubles. */
BQ_API bq_status bq_quantizer_weight(const bq_quantizer* q, int cell, double* weight_out);
/* Binary quantizers: out must hold K-1 doubles. */
BQ_API bq_status bq_quantizer_boundaries(const bq_quantizer* q, double* out);
/* Ternary quantizers: polygon vertices of one cell, barycentric. */
BQ_API bq_status bq_quantizer_cell_vertex_count(const bq_quantizer* q, int cell, int* out);
BQ_API bq_status bq_quantizer_cell_vertex(const bq_quantizer* q, int cell, int vertex,
                                          double* out);

/* Cell index and decision weight for a prior. */
BQ_API bq_status bq_quantize(const bq_quantizer* q, const double* prior, size_t len,
                             int* cell_out, double* weight_out);

/* The model a quantizer was designed for (a fresh handle). */
BQ_API bq_status bq_quantizer_model(const bq_quantizer* q, bq_model** out);

/* Lossless JSON serialization; free the string with bq_string_free. */
BQ_API bq_status bq_quantizer_to_json(const bq_quantizer* q, char** out);
BQ_API bq_status bq_quantizer_from_json(const char* json, bq_quantizer** out);
BQ_API void bq_string_free(char* s);

/* ---- distortion-rate sweeps ------------------------------------------ */

BQ_API bq_status bq_sweep_run(const bq_model* model, const int* cell_counts, size_t n,
                              const bq_design_options* opts, bq_sweep** out);
BQ_API void bq_sweep_free(bq_sweep* s);
BQ_API size_t bq_sweep_size(const bq_sweep* s);
BQ_API bq_status bq_sweep_entry(const bq_sweep* s, size_t index, int* cells_out,
                                double* max_divergence_out, int* converged_out);
/* Least-squares slope of ln D against ln K over converged entries with
 * K >= k_min; BQ_ERROR_INSUFFICIENT_DATA with fewer than 3 points. */
BQ_API bq_status bq_sweep_slope(const bq_sweep* s, int k_min, double* slope_out,
                                double* intercept_out, double* r2_out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* BREQUANT_H */
