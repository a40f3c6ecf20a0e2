#ifndef GREYFC_H
#define GREYFC_H

/* greyfc — grey-system forecasting library.
 *
 * C interface to the greyfc core: fractional accumulation operators
 * (FAGO/IFAGO), the unified fractional grey model UFGM(1,1) with an
 * exponential memory kernel, the GM(1,1)/DGM(1,1)/FGM(1,1) benchmarks,
 * forecast error metrics, metaheuristic hyperparameter search (PSO, GWO,
 * WOA, ALO) and the built-in comparison / grid-study harnesses.
 *
 * Conventions:
 *   - Every fallible function returns a greyfc_status; GREYFC_OK is 0.
 *   - On failure, greyfc_last_error() returns a thread-local message
 *     naming the failing guard.
 *   - Objects returned through out-parameters are owned by the caller and
 *     released with the matching *_free function. Pointers returned by
 *     accessor functions are views into the handle and stay valid until
 *     the handle is freed.
 *   - All handles are immutable after creation; using distinct handles
 *     from distinct threads needs no locking.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(__GNUC__)
#define GREYFC_API __attribute__((visibility("default")))
#else
#define GREYFC_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum greyfc_status {
  GREYFC_OK = 0,
  GREYFC_ERR_INVALID_ARGUMENT = 1,  /* null pointer, bad name, bad bounds */
  GREYFC_ERR_INVALID_SERIES = 2,    /* series fails model preconditions   */
  GREYFC_ERR_SINGULAR_SYSTEM = 3,   /* normal equations numerically singular */
  GREYFC_ERR_SINGULAR_PARAMETERS = 4, /* response validity guard failed   */
  GREYFC_ERR_UNKNOWN_NAME = 5,      /* unknown dataset / model / algorithm */
  GREYFC_ERR_PARSE = 6,             /* malformed CSV input                 */
  GREYFC_ERR_IO = 7,                /* file could not be read or written   */
  GREYFC_ERR_INTERNAL = 8
} greyfc_status;

GREYFC_API const char *greyfc_status_name(greyfc_status status);

/* Thread-local message describing the most recent failure in this thread.
 * Never NULL; empty string when no failure has occurred. */
GREYFC_API const char *greyfc_last_error(void);

GREYFC_API const char *greyfc_version(void);

/* Frees strings returned through char** out-parameters. */
GREYFC_API void greyfc_string_free(char *str);

/* ------------------------------------------------------------------ */
/* Series                                                              */
/* ------------------------------------------------------------------ */

typedef struct greyfc_series greyfc_series;

GREYFC_API greyfc_status greyfc_series_create(const double *values, size_t n,
                                              greyfc_series **out);

/* CSV with a single `value` column, an optional leading `label` column and
 * an optional header row. */
GREYFC_API greyfc_status greyfc_series_from_csv(const char *text,
                                                greyfc_series **out);
GREYFC_API greyfc_status greyfc_series_from_csv_file(const char *path,
                                                     greyfc_series **out);

/* Built-in case datasets: "case1_henan" (alias "case1") and
 * "case2_chongqing" (alias "case2"). train_len may be NULL. */
GREYFC_API greyfc_status greyfc_builtin_dataset(const char *name,
                                                greyfc_series **out,
                                                size_t *train_len);

GREYFC_API size_t greyfc_series_len(const greyfc_series *series);
GREYFC_API const double *greyfc_series_values(const greyfc_series *series);
GREYFC_API void greyfc_series_free(greyfc_series *series);

/* ------------------------------------------------------------------ */
/* Fractional accumulation operators                                   */
/* ------------------------------------------------------------------ */

/* Generalized binomial coefficient: product_{i=0..j-1} (order+i)/(i+1);
 * 1 for j = 0. Total over all real orders. */
GREYFC_API double greyfc_gen_binomial(double order, size_t j);

/* order-FAGO of x into out (both length n). */
GREYFC_API greyfc_status greyfc_fago(const double *x, size_t n, double order,
                                     double *out);

/* Inverse FAGO: restores the source series from its order-FAGO. */
GREYFC_API greyfc_status greyfc_ifago(const double *xa, size_t n, double order,
                                      double *out);

/* Trapezoid background values z(k) = (xa(k)+xa(k-1))/2 for k = 2..n;
 * out receives n-1 values. */
GREYFC_API greyfc_status greyfc_background(const double *xa, size_t n,
                                           double *out);

/* ------------------------------------------------------------------ */
/* Metrics                                                             */
/* ------------------------------------------------------------------ */

/* MAPE in percent over the scored points; skip_first != 0 excludes the
 * first point (in-sample convention). */
GREYFC_API greyfc_status greyfc_mape(const double *actual,
                                     const double *predicted, size_t n,
                                     int skip_first, double *out);
GREYFC_API greyfc_status greyfc_mse(const double *actual,
                                    const double *predicted, size_t n,
                                    int skip_first, double *out);
GREYFC_API greyfc_status greyfc_mae(const double *actual,
                                    const double *predicted, size_t n,
                                    int skip_first, double *out);

/* Lewis grading bands: "high" (<10), "good" ([10,20)), "reasonable"
 * ([20,50)), "inaccurate" (>=50). Rejects negative input. */
GREYFC_API greyfc_status greyfc_lewis_grade(double mape_percent,
                                            const char **grade);

/* ------------------------------------------------------------------ */
/* Model fitting                                                       */
/* ------------------------------------------------------------------ */

typedef struct greyfc_report greyfc_report;

/* Fits `model` ("gm", "dgm", "fgm", "ufgm") on the first train_n values of
 * the series (train_n 0 means the whole series) and forecasts `horizon`
 * further steps.
 *
 * hyper/hyper_len: ignored for gm/dgm, {r} for fgm, {r, alpha} for ufgm.
 * Out-of-sample metrics are computed against any holdout values the series
 * contains beyond train_n. */
GREYFC_API greyfc_status greyfc_fit(const greyfc_series *series,
                                    size_t train_n, const char *model,
                                    const double *hyper, size_t hyper_len,
                                    size_t horizon, greyfc_report **out);

/* Discrete time response of the exponential-kernel model:
 * x_hat_alpha(k) for k >= 1, with x_hat_alpha(1) = x_alpha_1 exactly. */
GREYFC_API greyfc_status greyfc_ufgm_response(double a, double b, double c,
                                              double r, double x_alpha_1,
                                              size_t k, double *out);

GREYFC_API const char *greyfc_report_model(const greyfc_report *report);
GREYFC_API greyfc_status greyfc_report_fitted(const greyfc_report *report,
                                              const double **values,
                                              size_t *len);
GREYFC_API greyfc_status greyfc_report_forecast(const greyfc_report *report,
                                                const double **values,
                                                size_t *len);

/* which: "in" | "out"; name: "mape" | "mse" | "mae" | "count".
 * Fails with GREYFC_ERR_INVALID_ARGUMENT when the report has no holdout
 * block; query presence with greyfc_report_has_out. */
GREYFC_API int greyfc_report_has_out(const greyfc_report *report);
GREYFC_API greyfc_status greyfc_report_metric(const greyfc_report *report,
                                              const char *which,
                                              const char *name, double *out);

/* name: "a" | "b" | "c" | "beta1" | "beta2" | "r" | "alpha"; fails when the
 * model has no such parameter. */
GREYFC_API greyfc_status greyfc_report_param(const greyfc_report *report,
                                             const char *name, double *out);

GREYFC_API const char *greyfc_report_lewis(const greyfc_report *report);

/* Hyperparameter-search provenance when the harness chose r/alpha.
 * Returns 0 and leaves outputs untouched when the report has none.
 * Out-pointers may be NULL. */
GREYFC_API int greyfc_report_search_info(const greyfc_report *report,
                                         const char **algorithm,
                                         uint64_t *seed, double *fitness);

/* Serializes the report as a JSON document. Numeric fields round-trip
 * bit-exactly through the emitted text. */
GREYFC_API greyfc_status greyfc_report_to_json(const greyfc_report *report,
                                               char **out);

GREYFC_API void greyfc_report_free(greyfc_report *report);

/* ------------------------------------------------------------------ */
/* Metaheuristic search                                                */
/* ------------------------------------------------------------------ */

typedef struct greyfc_opt_result greyfc_opt_result;

typedef struct greyfc_opt_config {
  const char *algorithm; /* "pso" | "gwo" | "woa" | "alo" */
  size_t population;     /* 0 => 30 */
  size_t iterations;     /* 0 => 100 */
  uint64_t seed;
} greyfc_opt_config;

typedef double (*greyfc_objective)(const double *point, size_t dim,
                                   void *user);

/* Minimizes fn over the box [lower, upper]^dim. Evaluation order is fixed,
 * so identical (config, objective) pairs produce bit-identical results.
 * The objective may return +inf as a penalty; NaN is treated as +inf. */
GREYFC_API greyfc_status greyfc_minimize(greyfc_objective fn, void *user,
                                         const double *lower,
                                         const double *upper, size_t dim,
                                         const greyfc_opt_config *config,
                                         greyfc_opt_result **out);

/* Searches hyperparameters minimizing the in-sample MAPE of the full
 * fit/predict/restore pipeline on the first train_n values.
 * model "fgm" searches r (dim 1), "ufgm" searches (r, alpha) (dim 2).
 * lower/upper may be NULL for the default box [0.01, 1]. */
GREYFC_API greyfc_status greyfc_search_hyper(const greyfc_series *series,
                                             size_t train_n,
                                             const char *model,
                                             const greyfc_opt_config *config,
                                             const double *lower,
                                             const double *upper,
                                             greyfc_opt_result **out);

GREYFC_API size_t greyfc_opt_dim(const greyfc_opt_result *result);
GREYFC_API greyfc_status greyfc_opt_best_point(const greyfc_opt_result *result,
                                               const double **point,
                                               size_t *dim);
GREYFC_API double greyfc_opt_best_fitness(const greyfc_opt_result *result);
GREYFC_API greyfc_status greyfc_opt_trace(const greyfc_opt_result *result,
                                          const double **trace, size_t *len);
GREYFC_API void greyfc_opt_result_free(greyfc_opt_result *result);

/* ------------------------------------------------------------------ */
/* Harnesses                                                           */
/* ------------------------------------------------------------------ */

typedef struct greyfc_policy {
  size_t population;  /* 0 => 30 */
  size_t iterations;  /* 0 => 100 */
  uint64_t seed_base; /* seeds seed_base .. seed_base+n_seeds-1 */
  size_t n_seeds;     /* 0 => 5 */
} greyfc_policy;

/* Fits the four competing models on the series; FGM and UFGM
 * hyperparameters are chosen by the best run over all four algorithms and
 * the policy's seed set. reports[0..3] receive gm, dgm, fgm, ufgm.
 * policy may be NULL for defaults; horizon 0 means "to the series end";
 * train_n 0 uses the built-in dataset's train split. */
GREYFC_API greyfc_status greyfc_run_comparison(const greyfc_series *series,
                                               size_t train_n, size_t horizon,
                                               const greyfc_policy *policy,
                                               greyfc_report *reports[4]);

typedef struct greyfc_grid greyfc_grid;

/* Axis values for the grid study. Any NULL axis uses the module default:
 * initial {1, 200001, 400001, 600001}, the others {0.1, 0.3, 0.5, 0.7, 0.9}. */
typedef struct greyfc_grid_spec {
  const double *initial;
  size_t n_initial;
  const double *alpha;
  size_t n_alpha;
  const double *r;
  size_t n_r;
  const double *a;
  size_t n_a;
  const double *b;
  size_t n_b;
  const double *c;
  size_t n_c;
} greyfc_grid_spec;

/* Evaluates the UFGM pipeline once per grid tuple with (a, b, c) taken from
 * the grid and the response initial value overridden; records the in-sample
 * MAPE or a failure flag. Row order is the nested loop order
 * initial > alpha > r > a > b > c. spec may be NULL for all defaults. */
GREYFC_API greyfc_status greyfc_grid_run(const greyfc_series *series,
                                         size_t train_n,
                                         const greyfc_grid_spec *spec,
                                         greyfc_grid **out);

GREYFC_API size_t greyfc_grid_len(const greyfc_grid *grid);

/* coords receives {initial, alpha, r, a, b, c}; *ok is 0 for flagged
 * (singular / non-finite) tuples, in which case *mape is not written. */
GREYFC_API greyfc_status greyfc_grid_row(const greyfc_grid *grid, size_t index,
                                         double coords[6], double *mape,
                                         int *ok);

/* CSV with header initial_value,alpha,r,a,b,c,mape,status; the mape field
 * is empty on flagged rows. */
GREYFC_API greyfc_status greyfc_grid_to_csv(const greyfc_grid *grid,
                                            char **out);

GREYFC_API void greyfc_grid_free(greyfc_grid *grid);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* GREYFC_H */
