// tsbench: benchmark CLI for the tshybrid forecasting library.
// Links only the C API from tshybrid.h.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tshybrid.h"

namespace {

struct InputOptions {
    std::string data_path;
    std::string column = "value";
    std::string label_column;
    std::string synth_kind;
    std::size_t synth_n = 500;
    unsigned long long seed = 42;
};

struct ModelOptions {
    std::string arima = "auto";  // "auto" or "p,d,q"
    std::string pc = "auto";     // "auto" or "L,K"
    std::string omega_mode = "validation-tail";
    double forced_omega = std::nan("");
    bool scale_inputs = false;
    double split = 0.8;
};

[[noreturn]] void fail(const std::string& stage, const std::string& msg) {
    std::fprintf(stderr, "error: %s: %s\n", stage.c_str(), msg.c_str());
    std::exit(1);
}

[[noreturn]] void fail_api(const std::string& stage) { fail(stage, tsh_last_error()); }

void add_input_options(CLI::App* cmd, InputOptions& in) {
    cmd->add_option("--data", in.data_path, "CSV file with a header row");
    cmd->add_option("--column", in.column, "Value column name or zero-based index")
        ->capture_default_str();
    cmd->add_option("--label-column", in.label_column, "Optional label column");
    cmd->add_option("--synth", in.synth_kind,
                    "Synthetic dataset instead of --data: ar1, trend-sine, random-walk, quadratic");
    cmd->add_option("--n", in.synth_n, "Synthetic series length")->capture_default_str();
    cmd->add_option("--seed", in.seed, "Random seed for synthetic data")->capture_default_str();
}

void add_model_options(CLI::App* cmd, ModelOptions& mo) {
    cmd->add_option("--split", mo.split, "Training fraction of the series")
        ->capture_default_str();
    cmd->add_option("--arima", mo.arima, "ARIMA order: auto or p,d,q")->capture_default_str();
    cmd->add_option("--pc", mo.pc, "Polynomial classifier config: auto or L,K")
        ->capture_default_str();
    cmd->add_option("--omega-mode", mo.omega_mode,
                    "Weight fitting window: validation-tail or in-sample")
        ->capture_default_str();
    cmd->add_option("--omega", mo.forced_omega,
                    "Force the combination weight instead of fitting it (diagnostic)");
    cmd->add_flag("--scale-inputs", mo.scale_inputs,
                  "Min-max scale classifier inputs before expansion");
}

// "p,d,q" -> three ints.
bool parse_triplet(const std::string& text, int& a, int& b, int& c) {
    int n = 0;
    return std::sscanf(text.c_str(), "%d,%d,%d%n", &a, &b, &c, &n) == 3 &&
           static_cast<std::size_t>(n) == text.size();
}

bool parse_pair(const std::string& text, int& a, int& b) {
    int n = 0;
    return std::sscanf(text.c_str(), "%d,%d%n", &a, &b, &n) == 2 &&
           static_cast<std::size_t>(n) == text.size();
}

tsh_config make_config(const ModelOptions& mo, unsigned long long seed) {
    tsh_config cfg;
    tsh_config_init(&cfg);
    cfg.train_fraction = mo.split;
    cfg.seed = seed;
    cfg.scale_inputs = mo.scale_inputs ? 1 : 0;
    cfg.forced_omega = mo.forced_omega;

    if (mo.arima != "auto") {
        cfg.arima_auto = 0;
        if (!parse_triplet(mo.arima, cfg.p, cfg.d, cfg.q)) {
            fail("options", "--arima expects 'auto' or 'p,d,q', got '" + mo.arima + "'");
        }
    }
    if (mo.pc != "auto") {
        cfg.pc_auto = 0;
        if (!parse_pair(mo.pc, cfg.window_len, cfg.degree)) {
            fail("options", "--pc expects 'auto' or 'L,K', got '" + mo.pc + "'");
        }
    }
    if (mo.omega_mode == "in-sample") {
        cfg.omega_in_sample = 1;
    } else if (mo.omega_mode != "validation-tail") {
        fail("options", "--omega-mode expects validation-tail or in-sample");
    }
    return cfg;
}

tsh_series* load_series(const InputOptions& in) {
    if (!in.data_path.empty()) {
        size_t skipped = 0;
        tsh_series* s = tsh_series_load_csv(in.data_path.c_str(), in.column.c_str(),
                                            in.label_column.empty() ? nullptr
                                                                    : in.label_column.c_str(),
                                            &skipped);
        if (s == nullptr) fail_api("load");
        if (skipped > 0) {
            std::fprintf(stderr, "note: skipped %zu rows without a parseable value\n", skipped);
        }
        return s;
    }
    if (!in.synth_kind.empty()) {
        tsh_series* s = tsh_series_synth(in.synth_kind.c_str(), in.synth_n, in.seed);
        if (s == nullptr) fail_api("synth");
        return s;
    }
    fail("options", "provide --data <file> or --synth <kind>");
}

void print_dataset_help() {
    std::printf(
        "Benchmark datasets (not bundled; download separately):\n"
        "  Delhi daily climate      https://www.kaggle.com/datasets/ (search: 'Daily Climate time\n"
        "                           series data'); value column: meantemp, label column: date\n"
        "  Daily gold prices        https://www.kaggle.com/datasets/ (search: 'gold price') or\n"
        "                           https://vn.investing.com/commodities; value column: price\n"
        "  Daily crude oil prices   https://www.kaggle.com/datasets/ (search: 'crude oil price') or\n"
        "                           https://vn.investing.com/commodities; value column: price\n"
        "  Monthly beer production  https://www.kaggle.com/datasets/ (search: 'monthly beer\n"
        "                           production in Australia'); value column: Monthly beer production\n"
        "\n"
        "Files must be CSV with a header row. Select the value column with\n"
        "--column <name-or-index>; numeric fields may carry comma thousands\n"
        "separators. Example:\n"
        "  tsbench compare --data DailyDelhiClimate.csv --column meantemp --out results/\n");
}

int cmd_compare(const InputOptions& in, const ModelOptions& mo, const std::string& out_dir) {
    tsh_series* series = load_series(in);
    const tsh_config cfg = make_config(mo, in.seed);
    tsh_comparison* cmp = tsh_compare_run(series, &cfg);
    if (cmp == nullptr) {
        tsh_series_free(series);
        fail_api("compare");
    }
    std::printf("%s", tsh_comparison_text(cmp));

    int rc = 0;
    for (int i = 0; i < tsh_comparison_rows(cmp); ++i) {
        if (!tsh_comparison_ok(cmp, i)) rc = 1;
    }
    if (!out_dir.empty()) {
        if (tsh_comparison_write(cmp, out_dir.c_str()) != TSH_OK) {
            tsh_comparison_free(cmp);
            tsh_series_free(series);
            fail_api("write");
        }
        std::printf("wrote %s/comparison.csv, forecasts.csv, plot.svg\n", out_dir.c_str());
    }
    tsh_comparison_free(cmp);
    tsh_series_free(series);
    return rc;
}

int cmd_sweep(const InputOptions& in, const ModelOptions& mo) {
    tsh_series* series = load_series(in);
    const tsh_config cfg = make_config(mo, in.seed);
    int window_len = 0;
    tsh_sweep_row rows[3];
    if (tsh_sweep_run(series, &cfg, &window_len, rows) != TSH_OK) {
        tsh_series_free(series);
        fail_api("sweep-degree");
    }
    std::printf("dataset: %s, window length %d\n", tsh_series_name(series), window_len);
    std::printf("%-8s%-12s%-14s%-14s%s\n", "Degree", "Time (s)", "MAE", "RMSE", "CV(RMSE)%");
    for (const auto& row : rows) {
        if (row.ok) {
            std::printf("%-8d%-12.4f%-14.4f%-14.4f%.4f\n", row.degree, row.metrics.wall_seconds,
                        row.metrics.mae, row.metrics.rmse, row.metrics.cv_rmse_percent);
        } else {
            std::printf("%-8dinfeasible\n", row.degree);
        }
    }
    tsh_series_free(series);
    return 0;
}

int cmd_fit(const InputOptions& in, const ModelOptions& mo) {
    tsh_series* series = load_series(in);
    tsh_series* train = nullptr;
    tsh_series* test = nullptr;
    if (tsh_series_split(series, mo.split, &train, &test) != TSH_OK) fail_api("split");
    std::printf("series: %s (n=%zu, train=%zu, test=%zu)\n", tsh_series_name(series),
                tsh_series_length(series), tsh_series_length(train), tsh_series_length(test));

    const tsh_config cfg = make_config(mo, in.seed);
    tsh_hybrid* hybrid = tsh_hybrid_fit(train, &cfg);
    if (hybrid == nullptr) fail_api("fit");

    int p = 0, d = 0, q = 0, window_len = 0, degree = 0;
    tsh_hybrid_arima_order(hybrid, &p, &d, &q);
    tsh_hybrid_pc_config(hybrid, &window_len, &degree);
    std::printf("arima:  ARIMA(%d,%d,%d)\n", p, d, q);

    // Refit the standalone models to report coefficients and AIC.
    tsh_arima* arima = tsh_arima_fit(train, p, d, q);
    if (arima != nullptr) {
        std::vector<double> phi(static_cast<std::size_t>(p));
        std::vector<double> theta(static_cast<std::size_t>(q));
        tsh_arima_ar_coeffs(arima, phi.data(), phi.size());
        tsh_arima_ma_coeffs(arima, theta.data(), theta.size());
        std::printf("  intercept %.6f, sigma2 %.6f, AIC %.4f%s\n", tsh_arima_intercept(arima),
                    tsh_arima_sigma2(arima), tsh_arima_aic(arima),
                    tsh_arima_converged(arima) ? "" : " (optimizer hit iteration cap)");
        for (int i = 0; i < p; ++i) std::printf("  phi[%d] = %.6f\n", i + 1, phi[static_cast<std::size_t>(i)]);
        for (int j = 0; j < q; ++j) std::printf("  theta[%d] = %.6f\n", j + 1, theta[static_cast<std::size_t>(j)]);
        tsh_arima_free(arima);
    }

    size_t n_weights = 0;
    tsh_pc* pc = tsh_pc_fit(train, window_len, degree, mo.scale_inputs ? 1 : 0);
    if (pc != nullptr) {
        tsh_pc_config(pc, nullptr, nullptr, &n_weights);
        std::printf("pc:     window %d, degree %d, %zu weights, train SSE %.6g\n", window_len,
                    degree, n_weights, tsh_pc_train_sse(pc));
        tsh_pc_free(pc);
    }

    std::printf("hybrid: omega %.6f (unclipped %.6f)%s\n", tsh_hybrid_omega(hybrid),
                tsh_hybrid_omega_unclipped(hybrid),
                tsh_hybrid_omega_degenerate(hybrid) ? " [degenerate: identical forecasts]" : "");

    tsh_hybrid_free(hybrid);
    tsh_series_free(test);
    tsh_series_free(train);
    tsh_series_free(series);
    return 0;
}

int cmd_forecast(const InputOptions& in, const ModelOptions& mo, const std::string& out_dir) {
    tsh_series* series = load_series(in);
    const tsh_config cfg = make_config(mo, in.seed);
    tsh_comparison* cmp = tsh_compare_run(series, &cfg);
    if (cmp == nullptr) fail_api("forecast");
    if (tsh_comparison_write(cmp, out_dir.c_str()) != TSH_OK) fail_api("write");
    std::printf("wrote %s/forecasts.csv and plot.svg (one-step test forecasts)\n",
                out_dir.c_str());
    int rc = 0;
    for (int i = 0; i < tsh_comparison_rows(cmp); ++i) {
        if (!tsh_comparison_ok(cmp, i)) {
            std::fprintf(stderr, "note: %s failed: %s\n", tsh_comparison_model(cmp, i),
                         tsh_comparison_error(cmp, i));
            rc = 1;
        }
    }
    tsh_comparison_free(cmp);
    tsh_series_free(series);
    return rc;
}

int cmd_synth(const InputOptions& in, const std::string& out_dir) {
    if (in.synth_kind.empty()) fail("options", "synth requires --synth <kind>");
    tsh_series* s = tsh_series_synth(in.synth_kind.c_str(), in.synth_n, in.seed);
    if (s == nullptr) fail_api("synth");

    namespace fs = std::filesystem;
    fs::path dir = out_dir.empty() ? fs::path(".") : fs::path(out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    const std::string path = (dir / ("synth_" + in.synth_kind + ".csv")).string();
    if (tsh_series_write_csv(s, path.c_str()) != TSH_OK) fail_api("write");
    std::printf("wrote %s (%zu points)\n", path.c_str(), tsh_series_length(s));
    tsh_series_free(s);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"tsbench: ARIMA / polynomial-classifier / hybrid forecasting benchmark"};
    app.require_subcommand(0, 1);

    bool dataset_help = false;
    app.add_flag("--dataset-help", dataset_help, "Describe the benchmark datasets and exit");

    InputOptions in;
    ModelOptions mo;
    std::string out_dir;

    CLI::App* compare = app.add_subcommand("compare", "Three-model accuracy and timing table");
    add_input_options(compare, in);
    add_model_options(compare, mo);
    compare->add_option("--out", out_dir, "Directory for CSV and SVG outputs");

    CLI::App* sweep = app.add_subcommand("sweep-degree", "Test metrics per polynomial degree");
    add_input_options(sweep, in);
    add_model_options(sweep, mo);

    CLI::App* fit = app.add_subcommand("fit", "Fit on the training split and print parameters");
    add_input_options(fit, in);
    add_model_options(fit, mo);

    CLI::App* forecast =
        app.add_subcommand("forecast", "Write one-step test forecasts per model");
    add_input_options(forecast, in);
    add_model_options(forecast, mo);
    forecast->add_option("--out", out_dir, "Output directory")->required();

    CLI::App* synth = app.add_subcommand("synth", "Generate a synthetic dataset CSV");
    add_input_options(synth, in);
    synth->add_option("--out", out_dir, "Output directory (default: current)");

    CLI11_PARSE(app, argc, argv);

    if (dataset_help) {
        print_dataset_help();
        return 0;
    }
    if (app.get_subcommands().empty()) {
        std::printf("%s", app.help().c_str());
        return 0;
    }

    if (compare->parsed()) return cmd_compare(in, mo, out_dir);
    if (sweep->parsed()) return cmd_sweep(in, mo);
    if (fit->parsed()) return cmd_fit(in, mo);
    if (forecast->parsed()) return cmd_forecast(in, mo, out_dir);
    if (synth->parsed()) return cmd_synth(in, out_dir);
    return 0;
}
