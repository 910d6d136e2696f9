#include "tshybrid.h"

#include <cmath>
#include <cstring>
#include <string>

#include "tsh/arima.hpp"
#include "tsh/bench.hpp"
#include "tsh/csvio.hpp"
#include "tsh/errors.hpp"
#include "tsh/hybrid.hpp"
#include "tsh/metrics.hpp"
#include "tsh/polycls.hpp"
#include "tsh/series.hpp"
#include "tsh/svg.hpp"
#include "tsh/synth.hpp"

struct tsh_series {
    tsh::TimeSeries impl;
};
struct tsh_arima {
    tsh::ArimaModel impl;
};
struct tsh_pc {
    tsh::PolyModel impl;
};
struct tsh_hybrid {
    tsh::HybridModel impl;
};
struct tsh_comparison {
    tsh::ComparisonTable impl;
    std::string text_cache;
};

namespace {

thread_local std::string g_last_error = "no error";

void set_error(const std::string& msg) { g_last_error = msg; }

tsh_status status_of(const std::exception& e) {
    if (dynamic_cast<const tsh::DegenerateInput*>(&e)) return TSH_ERR_DEGENERATE_INPUT;
    if (dynamic_cast<const tsh::SingularMatrix*>(&e)) return TSH_ERR_SINGULAR_MATRIX;
    if (dynamic_cast<const tsh::CorruptStructure*>(&e)) return TSH_ERR_CORRUPT_STRUCTURE;
    if (dynamic_cast<const tsh::IoError*>(&e)) return TSH_ERR_IO;
    if (dynamic_cast<const std::invalid_argument*>(&e)) return TSH_ERR_INVALID_ARGUMENT;
    return TSH_ERR_INTERNAL;
}

// Runs fn, translating exceptions into a status plus thread-local message.
template <typename Fn>
tsh_status guarded(Fn&& fn) {
    try {
        fn();
        return TSH_OK;
    } catch (const std::exception& e) {
        set_error(e.what());
        return status_of(e);
    } catch (...) {
        set_error("unknown error");
        return TSH_ERR_INTERNAL;
    }
}

// Pointer-returning variant: NULL signals failure.
template <typename Fn>
auto guarded_ptr(Fn&& fn) -> decltype(fn()) {
    try {
        return fn();
    } catch (const std::exception& e) {
        set_error(e.what());
        return nullptr;
    } catch (...) {
        set_error("unknown error");
        return nullptr;
    }
}

tsh_status require(bool ok, const char* msg) {
    if (ok) return TSH_OK;
    set_error(msg);
    return TSH_ERR_INVALID_ARGUMENT;
}

tsh::ExperimentConfig to_cpp_config(const tsh_config& cfg) {
    tsh::ExperimentConfig out;
    out.train_fraction = cfg.train_fraction;
    out.arima.automatic = cfg.arima_auto != 0;
    out.arima.order = tsh::ArimaOrder{cfg.p, cfg.d, cfg.q};
    out.pc.automatic = cfg.pc_auto != 0;
    out.pc.window_len = cfg.window_len;
    out.pc.degree = cfg.degree;
    out.pc.scale_inputs = cfg.scale_inputs != 0;
    out.omega_mode = cfg.omega_in_sample ? tsh::OmegaMode::InSample
                                         : tsh::OmegaMode::ValidationTail;
    if (!std::isnan(cfg.forced_omega)) out.forced_omega = cfg.forced_omega;
    out.seed = cfg.seed;
    return out;
}

tsh_status copy_out(const std::vector<double>& src, double* out, size_t capacity,
                    const char* what) {
    if (out == nullptr) return require(false, "output buffer is null");
    if (capacity < src.size()) {
        set_error(std::string(what) + ": buffer holds " + std::to_string(capacity) +
                  " values, need " + std::to_string(src.size()));
        return TSH_ERR_INVALID_ARGUMENT;
    }
    std::memcpy(out, src.data(), src.size() * sizeof(double));
    return TSH_OK;
}

tsh_metrics to_c_metrics(const tsh::MetricsReport& r) {
    return tsh_metrics{r.mae, r.rmse, r.cv_rmse_percent, r.wall_seconds, r.n};
}

}  // namespace

extern "C" {

const char* tsh_version(void) { return "0.1.0"; }

const char* tsh_last_error(void) { return g_last_error.c_str(); }

tsh_series* tsh_series_create(const double* values, size_t n, const char* name) {
    return guarded_ptr([&]() -> tsh_series* {
        if (values == nullptr || n == 0) {
            throw std::invalid_argument("tsh_series_create: values must be non-null and nonempty");
        }
        return new tsh_series{tsh::TimeSeries(std::vector<double>(values, values + n),
                                              name ? name : "")};
    });
}

tsh_series* tsh_series_load_csv(const char* path, const char* value_column,
                                const char* label_column, size_t* skipped_out) {
    return guarded_ptr([&]() -> tsh_series* {
        if (path == nullptr || value_column == nullptr) {
            throw std::invalid_argument("tsh_series_load_csv: path and value column required");
        }
        std::optional<std::string> label;
        if (label_column != nullptr && label_column[0] != '\0') label = label_column;
        tsh::CsvLoadResult res = tsh::load_csv(path, value_column, label);
        if (skipped_out != nullptr) *skipped_out = res.skipped_rows;
        return new tsh_series{std::move(res.series)};
    });
}

tsh_series* tsh_series_synth(const char* kind, size_t n, unsigned long long seed) {
    return guarded_ptr([&]() -> tsh_series* {
        if (kind == nullptr) throw std::invalid_argument("tsh_series_synth: kind required");
        return new tsh_series{tsh::synth_dataset(kind, n, seed)};
    });
}

size_t tsh_series_length(const tsh_series* s) { return s ? s->impl.length() : 0; }

const char* tsh_series_name(const tsh_series* s) { return s ? s->impl.name.c_str() : ""; }

tsh_status tsh_series_values(const tsh_series* s, double* out, size_t capacity) {
    if (s == nullptr) return require(false, "tsh_series_values: series is null");
    return copy_out(s->impl.values, out, capacity, "tsh_series_values");
}

tsh_status tsh_series_split(const tsh_series* s, double train_fraction,
                            tsh_series** train_out, tsh_series** test_out) {
    if (s == nullptr || train_out == nullptr || test_out == nullptr) {
        return require(false, "tsh_series_split: null argument");
    }
    return guarded([&] {
        auto [train, test] = tsh::train_test_split(s->impl, train_fraction);
        *train_out = new tsh_series{std::move(train)};
        *test_out = new tsh_series{std::move(test)};
    });
}

tsh_status tsh_series_write_csv(const tsh_series* s, const char* path) {
    if (s == nullptr || path == nullptr) {
        return require(false, "tsh_series_write_csv: null argument");
    }
    return guarded([&] { tsh::write_series_csv(s->impl, path); });
}

void tsh_series_free(tsh_series* s) { delete s; }

void tsh_config_init(tsh_config* cfg) {
    if (cfg == nullptr) return;
    cfg->train_fraction = 0.8;
    cfg->arima_auto = 1;
    cfg->p = cfg->d = cfg->q = 0;
    cfg->pc_auto = 1;
    cfg->window_len = 0;
    cfg->degree = 0;
    cfg->omega_in_sample = 0;
    cfg->forced_omega = std::nan("");
    cfg->scale_inputs = 0;
    cfg->seed = 42;
}

tsh_arima* tsh_arima_fit(const tsh_series* train, int p, int d, int q) {
    return guarded_ptr([&]() -> tsh_arima* {
        if (train == nullptr) throw std::invalid_argument("tsh_arima_fit: series is null");
        return new tsh_arima{tsh::fit_arima(train->impl, tsh::ArimaOrder{p, d, q})};
    });
}

tsh_arima* tsh_arima_fit_auto(const tsh_series* train) {
    return guarded_ptr([&]() -> tsh_arima* {
        if (train == nullptr) throw std::invalid_argument("tsh_arima_fit_auto: series is null");
        return new tsh_arima{tsh::auto_order(train->impl).model};
    });
}

tsh_status tsh_arima_order(const tsh_arima* m, int* p, int* d, int* q) {
    if (m == nullptr) return require(false, "tsh_arima_order: model is null");
    if (p) *p = m->impl.order.p;
    if (d) *d = m->impl.order.d;
    if (q) *q = m->impl.order.q;
    return TSH_OK;
}

double tsh_arima_intercept(const tsh_arima* m) { return m ? m->impl.intercept : 0.0; }
double tsh_arima_sigma2(const tsh_arima* m) { return m ? m->impl.sigma2 : 0.0; }
double tsh_arima_aic(const tsh_arima* m) { return m ? m->impl.aic : 0.0; }
int tsh_arima_converged(const tsh_arima* m) { return (m && m->impl.converged) ? 1 : 0; }

tsh_status tsh_arima_ar_coeffs(const tsh_arima* m, double* out, size_t capacity) {
    if (m == nullptr) return require(false, "tsh_arima_ar_coeffs: model is null");
    return copy_out(m->impl.phi, out, capacity, "tsh_arima_ar_coeffs");
}

tsh_status tsh_arima_ma_coeffs(const tsh_arima* m, double* out, size_t capacity) {
    if (m == nullptr) return require(false, "tsh_arima_ma_coeffs: model is null");
    return copy_out(m->impl.theta, out, capacity, "tsh_arima_ma_coeffs");
}

tsh_status tsh_arima_forecast(const tsh_arima* m, const tsh_series* train,
                              const tsh_series* test, double* out) {
    if (m == nullptr || train == nullptr || test == nullptr || out == nullptr) {
        return require(false, "tsh_arima_forecast: null argument");
    }
    return guarded([&] {
        const std::vector<double> fc = tsh::rolling_forecast(m->impl, train->impl, test->impl);
        std::memcpy(out, fc.data(), fc.size() * sizeof(double));
    });
}

void tsh_arima_free(tsh_arima* m) { delete m; }

tsh_pc* tsh_pc_fit(const tsh_series* train, int window_len, int degree, int scale_inputs) {
    return guarded_ptr([&]() -> tsh_pc* {
        if (train == nullptr) throw std::invalid_argument("tsh_pc_fit: series is null");
        return new tsh_pc{tsh::fit_pc(train->impl, window_len, degree, scale_inputs != 0)};
    });
}

tsh_pc* tsh_pc_fit_auto(const tsh_series* train, int scale_inputs) {
    return guarded_ptr([&]() -> tsh_pc* {
        if (train == nullptr) throw std::invalid_argument("tsh_pc_fit_auto: series is null");
        const tsh::PcConfig cfg =
            tsh::select_pc_config(train->impl, tsh::default_window_grid(),
                                  tsh::default_degree_grid(), scale_inputs != 0);
        return new tsh_pc{
            tsh::fit_pc(train->impl, cfg.window_len, cfg.degree, scale_inputs != 0)};
    });
}

tsh_status tsh_pc_config(const tsh_pc* m, int* window_len, int* degree, size_t* n_weights) {
    if (m == nullptr) return require(false, "tsh_pc_config: model is null");
    if (window_len) *window_len = m->impl.basis.window_len;
    if (degree) *degree = m->impl.basis.degree;
    if (n_weights) *n_weights = m->impl.weights.size();
    return TSH_OK;
}

double tsh_pc_train_sse(const tsh_pc* m) { return m ? m->impl.train_sse : 0.0; }

tsh_status tsh_pc_weights(const tsh_pc* m, double* out, size_t capacity) {
    if (m == nullptr) return require(false, "tsh_pc_weights: model is null");
    return copy_out(m->impl.weights, out, capacity, "tsh_pc_weights");
}

tsh_status tsh_pc_forecast(const tsh_pc* m, const tsh_series* train, const tsh_series* test,
                           double* out) {
    if (m == nullptr || train == nullptr || test == nullptr || out == nullptr) {
        return require(false, "tsh_pc_forecast: null argument");
    }
    return guarded([&] {
        const std::vector<double> fc =
            tsh::rolling_forecast_pc(m->impl, train->impl, test->impl);
        std::memcpy(out, fc.data(), fc.size() * sizeof(double));
    });
}

void tsh_pc_free(tsh_pc* m) { delete m; }

tsh_hybrid* tsh_hybrid_fit(const tsh_series* train, const tsh_config* cfg) {
    return guarded_ptr([&]() -> tsh_hybrid* {
        if (train == nullptr || cfg == nullptr) {
            throw std::invalid_argument("tsh_hybrid_fit: null argument");
        }
        const tsh::ExperimentConfig c = to_cpp_config(*cfg);
        return new tsh_hybrid{tsh::fit_hybrid(train->impl, c.arima, c.pc, c.omega_mode,
                                              c.forced_omega)};
    });
}

double tsh_hybrid_omega(const tsh_hybrid* m) { return m ? m->impl.omega : 0.0; }
double tsh_hybrid_omega_unclipped(const tsh_hybrid* m) {
    return m ? m->impl.omega_unclipped : 0.0;
}
int tsh_hybrid_omega_degenerate(const tsh_hybrid* m) {
    return (m && m->impl.omega_degenerate) ? 1 : 0;
}

tsh_status tsh_hybrid_arima_order(const tsh_hybrid* m, int* p, int* d, int* q) {
    if (m == nullptr) return require(false, "tsh_hybrid_arima_order: model is null");
    if (p) *p = m->impl.arima.order.p;
    if (d) *d = m->impl.arima.order.d;
    if (q) *q = m->impl.arima.order.q;
    return TSH_OK;
}

tsh_status tsh_hybrid_pc_config(const tsh_hybrid* m, int* window_len, int* degree) {
    if (m == nullptr) return require(false, "tsh_hybrid_pc_config: model is null");
    if (window_len) *window_len = m->impl.pc.basis.window_len;
    if (degree) *degree = m->impl.pc.basis.degree;
    return TSH_OK;
}

tsh_status tsh_hybrid_forecast(const tsh_hybrid* m, const tsh_series* train,
                               const tsh_series* test, double* out) {
    if (m == nullptr || train == nullptr || test == nullptr || out == nullptr) {
        return require(false, "tsh_hybrid_forecast: null argument");
    }
    return guarded([&] {
        const std::vector<double> fc =
            tsh::rolling_forecast_hybrid(m->impl, train->impl, test->impl);
        std::memcpy(out, fc.data(), fc.size() * sizeof(double));
    });
}

void tsh_hybrid_free(tsh_hybrid* m) { delete m; }

tsh_status tsh_metrics_evaluate(const double* obs, const double* pred, size_t n,
                                double wall_seconds, tsh_metrics* out) {
    if (obs == nullptr || pred == nullptr || out == nullptr) {
        return require(false, "tsh_metrics_evaluate: null argument");
    }
    return guarded([&] {
        const tsh::MetricsReport r =
            tsh::evaluate(std::vector<double>(obs, obs + n),
                          std::vector<double>(pred, pred + n), wall_seconds);
        *out = to_c_metrics(r);
    });
}

tsh_comparison* tsh_compare_run(const tsh_series* s, const tsh_config* cfg) {
    return guarded_ptr([&]() -> tsh_comparison* {
        if (s == nullptr || cfg == nullptr) {
            throw std::invalid_argument("tsh_compare_run: null argument");
        }
        auto* out = new tsh_comparison{tsh::run_compare(s->impl, to_cpp_config(*cfg)), ""};
        out->text_cache = out->impl.to_text();
        return out;
    });
}

int tsh_comparison_rows(const tsh_comparison* c) {
    return c ? static_cast<int>(c->impl.rows.size()) : 0;
}

const char* tsh_comparison_model(const tsh_comparison* c, int row) {
    if (c == nullptr || row < 0 || row >= 3) return "";
    return c->impl.rows[static_cast<std::size_t>(row)].model.c_str();
}

int tsh_comparison_ok(const tsh_comparison* c, int row) {
    if (c == nullptr || row < 0 || row >= 3) return 0;
    return c->impl.rows[static_cast<std::size_t>(row)].ok ? 1 : 0;
}

const char* tsh_comparison_error(const tsh_comparison* c, int row) {
    if (c == nullptr || row < 0 || row >= 3) return "";
    return c->impl.rows[static_cast<std::size_t>(row)].error.c_str();
}

tsh_status tsh_comparison_metrics(const tsh_comparison* c, int row, tsh_metrics* out) {
    if (c == nullptr || out == nullptr || row < 0 || row >= 3) {
        return require(false, "tsh_comparison_metrics: bad argument");
    }
    const tsh::ModelRow& r = c->impl.rows[static_cast<std::size_t>(row)];
    if (!r.ok) {
        set_error("tsh_comparison_metrics: row failed: " + r.error);
        return TSH_ERR_INVALID_ARGUMENT;
    }
    *out = to_c_metrics(r.metrics);
    return TSH_OK;
}

const char* tsh_comparison_params(const tsh_comparison* c, int row) {
    if (c == nullptr || row < 0 || row >= 3) return "";
    return c->impl.rows[static_cast<std::size_t>(row)].params.c_str();
}

const char* tsh_comparison_text(const tsh_comparison* c) {
    return c ? c->text_cache.c_str() : "";
}

tsh_status tsh_comparison_write(const tsh_comparison* c, const char* dir) {
    if (c == nullptr || dir == nullptr) {
        return require(false, "tsh_comparison_write: null argument");
    }
    return guarded([&] { tsh::write_outputs(c->impl, dir); });
}

void tsh_comparison_free(tsh_comparison* c) { delete c; }

tsh_status tsh_sweep_run(const tsh_series* s, const tsh_config* cfg, int* window_len_out,
                         tsh_sweep_row rows[3]) {
    if (s == nullptr || cfg == nullptr || rows == nullptr) {
        return require(false, "tsh_sweep_run: null argument");
    }
    return guarded([&] {
        const tsh::DegreeSweepTable table =
            tsh::run_degree_sweep(s->impl, to_cpp_config(*cfg));
        if (window_len_out) *window_len_out = table.window_len;
        for (std::size_t i = 0; i < 3; ++i) {
            rows[i].degree = table.rows[i].degree;
            rows[i].ok = table.rows[i].ok ? 1 : 0;
            rows[i].metrics = table.rows[i].ok ? to_c_metrics(table.rows[i].metrics)
                                               : tsh_metrics{0, 0, 0, 0, 0};
        }
    });
}

tsh_status tsh_plot_svg(const double* observed, size_t n, const char* const* names,
                        const double* const* series, size_t n_series, const char* title,
                        const char* path) {
    if (observed == nullptr || path == nullptr || (n_series > 0 && (names == nullptr || series == nullptr))) {
        return require(false, "tsh_plot_svg: null argument");
    }
    return guarded([&] {
        std::vector<tsh::PlotSeries> fc;
        fc.reserve(n_series);
        for (size_t i = 0; i < n_series; ++i) {
            fc.push_back(tsh::PlotSeries{names[i] ? names[i] : "series",
                                         std::vector<double>(series[i], series[i] + n)});
        }
        tsh::emit_plot(std::vector<double>(observed, observed + n), fc, path,
                       title ? title : "");
    });
}

}  // extern "C"
