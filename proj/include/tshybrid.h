/*
 * tshybrid — C API for the hybrid ARIMA / polynomial-classifier forecasting
 * toolkit. All functions are thread-safe as long as distinct threads use
 * distinct handles; the error message is thread-local.
 *
 * Conventions:
 *   - functions returning a pointer yield NULL on failure,
 *   - functions returning tsh_status yield TSH_OK (0) on success,
 *   - in both cases tsh_last_error() describes the most recent failure on
 *     the calling thread,
 *   - every *_free() accepts NULL.
 */
#ifndef TSHYBRID_H
#define TSHYBRID_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tsh_status {
    TSH_OK = 0,
    TSH_ERR_INVALID_ARGUMENT = 1,
    TSH_ERR_DEGENERATE_INPUT = 2,
    TSH_ERR_SINGULAR_MATRIX = 3,
    TSH_ERR_CORRUPT_STRUCTURE = 4,
    TSH_ERR_IO = 5,
    TSH_ERR_INTERNAL = 6
} tsh_status;

typedef struct tsh_series tsh_series;
typedef struct tsh_arima tsh_arima;
typedef struct tsh_pc tsh_pc;
typedef struct tsh_hybrid tsh_hybrid;
typedef struct tsh_comparison tsh_comparison;

const char* tsh_version(void);

/* Message for the last failed call on this thread; never NULL. */
const char* tsh_last_error(void);

/* ---- series ---------------------------------------------------------- */

tsh_series* tsh_series_create(const double* values, size_t n, const char* name);

/* Column selected by header name or zero-based index; rows with an
 * unparseable value are skipped and counted into *skipped_out (optional). */
tsh_series* tsh_series_load_csv(const char* path, const char* value_column,
                                const char* label_column, size_t* skipped_out);

/* kind: "ar1", "trend-sine", "random-walk" or "quadratic". */
tsh_series* tsh_series_synth(const char* kind, size_t n, unsigned long long seed);

size_t tsh_series_length(const tsh_series* s);
const char* tsh_series_name(const tsh_series* s);
tsh_status tsh_series_values(const tsh_series* s, double* out, size_t capacity);
tsh_status tsh_series_split(const tsh_series* s, double train_fraction,
                            tsh_series** train_out, tsh_series** test_out);
tsh_status tsh_series_write_csv(const tsh_series* s, const char* path);
void tsh_series_free(tsh_series* s);

/* ---- experiment configuration ---------------------------------------- */

typedef struct tsh_config {
    double train_fraction;   /* default 0.8 */
    int arima_auto;          /* nonzero: search the order grid */
    int p, d, q;             /* explicit order when arima_auto == 0 */
    int pc_auto;             /* nonzero: select window/degree by validation */
    int window_len, degree;  /* explicit config when pc_auto == 0 */
    int omega_in_sample;     /* nonzero: weight from in-sample fitted values */
    double forced_omega;     /* NaN: fit the weight (default) */
    int scale_inputs;        /* nonzero: min-max scale classifier inputs */
    unsigned long long seed;
} tsh_config;

/* Fills *cfg with the defaults listed above. */
void tsh_config_init(tsh_config* cfg);

/* ---- ARIMA ------------------------------------------------------------ */

tsh_arima* tsh_arima_fit(const tsh_series* train, int p, int d, int q);
tsh_arima* tsh_arima_fit_auto(const tsh_series* train);
tsh_status tsh_arima_order(const tsh_arima* m, int* p, int* d, int* q);
double tsh_arima_intercept(const tsh_arima* m);
double tsh_arima_sigma2(const tsh_arima* m);
double tsh_arima_aic(const tsh_arima* m);
int tsh_arima_converged(const tsh_arima* m);
tsh_status tsh_arima_ar_coeffs(const tsh_arima* m, double* out, size_t capacity);
tsh_status tsh_arima_ma_coeffs(const tsh_arima* m, double* out, size_t capacity);
/* One-step-ahead forecasts over the test range; out holds test length. */
tsh_status tsh_arima_forecast(const tsh_arima* m, const tsh_series* train,
                              const tsh_series* test, double* out);
void tsh_arima_free(tsh_arima* m);

/* ---- polynomial classifier -------------------------------------------- */

tsh_pc* tsh_pc_fit(const tsh_series* train, int window_len, int degree, int scale_inputs);
tsh_pc* tsh_pc_fit_auto(const tsh_series* train, int scale_inputs);
tsh_status tsh_pc_config(const tsh_pc* m, int* window_len, int* degree, size_t* n_weights);
double tsh_pc_train_sse(const tsh_pc* m);
tsh_status tsh_pc_weights(const tsh_pc* m, double* out, size_t capacity);
tsh_status tsh_pc_forecast(const tsh_pc* m, const tsh_series* train,
                           const tsh_series* test, double* out);
void tsh_pc_free(tsh_pc* m);

/* ---- hybrid ------------------------------------------------------------ */

tsh_hybrid* tsh_hybrid_fit(const tsh_series* train, const tsh_config* cfg);
double tsh_hybrid_omega(const tsh_hybrid* m);
double tsh_hybrid_omega_unclipped(const tsh_hybrid* m);
int tsh_hybrid_omega_degenerate(const tsh_hybrid* m);
tsh_status tsh_hybrid_arima_order(const tsh_hybrid* m, int* p, int* d, int* q);
tsh_status tsh_hybrid_pc_config(const tsh_hybrid* m, int* window_len, int* degree);
tsh_status tsh_hybrid_forecast(const tsh_hybrid* m, const tsh_series* train,
                               const tsh_series* test, double* out);
void tsh_hybrid_free(tsh_hybrid* m);

/* ---- metrics ------------------------------------------------------------ */

typedef struct tsh_metrics {
    double mae;
    double rmse;
    double cv_rmse_percent;
    double wall_seconds;
    size_t n;
} tsh_metrics;

tsh_status tsh_metrics_evaluate(const double* obs, const double* pred, size_t n,
                                double wall_seconds, tsh_metrics* out);

/* ---- benchmark comparison ------------------------------------------------ */

/* Full three-model protocol: split, fit, one-step forecasts, metrics. */
tsh_comparison* tsh_compare_run(const tsh_series* s, const tsh_config* cfg);
int tsh_comparison_rows(const tsh_comparison* c);
const char* tsh_comparison_model(const tsh_comparison* c, int row);
int tsh_comparison_ok(const tsh_comparison* c, int row);
const char* tsh_comparison_error(const tsh_comparison* c, int row);
tsh_status tsh_comparison_metrics(const tsh_comparison* c, int row, tsh_metrics* out);
const char* tsh_comparison_params(const tsh_comparison* c, int row);
/* Aligned plain-text table, owned by the comparison object. */
const char* tsh_comparison_text(const tsh_comparison* c);
/* comparison.csv, forecasts.csv and plot.svg under dir. */
tsh_status tsh_comparison_write(const tsh_comparison* c, const char* dir);
void tsh_comparison_free(tsh_comparison* c);

/* ---- degree sweep --------------------------------------------------------- */

typedef struct tsh_sweep_row {
    int degree;
    int ok;
    tsh_metrics metrics;
} tsh_sweep_row;

/* Fills rows[0..2] with test metrics for degrees 1..3 at a fixed window
 * length (from cfg, or selected automatically when cfg->pc_auto). */
tsh_status tsh_sweep_run(const tsh_series* s, const tsh_config* cfg,
                         int* window_len_out, tsh_sweep_row rows[3]);

/* ---- plotting --------------------------------------------------------------- */

/* Line chart of the observed sequence plus n_series aligned forecast
 * polylines; byte-deterministic for fixed input. */
tsh_status tsh_plot_svg(const double* observed, size_t n, const char* const* names,
                        const double* const* series, size_t n_series, const char* title,
                        const char* path);

#ifdef __cplusplus
}
#endif

#endif /* TSHYBRID_H */
