#include "tsh/bench.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "tsh/csvio.hpp"
#include "tsh/errors.hpp"
#include "tsh/svg.hpp"
#include "tsh/synth.hpp"

namespace tsh {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt4(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return buf;
}

std::string pad(const std::string& s, std::size_t width) {
    return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

std::string arima_params_text(const ArimaModel& m) {
    return "ARIMA(" + std::to_string(m.order.p) + "," + std::to_string(m.order.d) + "," +
           std::to_string(m.order.q) + ")";
}

std::string pc_params_text(const PolyModel& m) {
    return "L=" + std::to_string(m.basis.window_len) + ",K=" + std::to_string(m.basis.degree);
}

}  // namespace

void ExperimentConfig::validate() const {
    if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
        throw std::invalid_argument("config: train fraction must lie in (0, 1)");
    }
    if (!arima.automatic) arima.order.validate();
    if (!pc.automatic) {
        if (pc.window_len < 1) {
            throw std::invalid_argument("config: window length must be >= 1");
        }
        if (pc.degree < kMinPcDegree || pc.degree > kMaxPcDegree) {
            throw std::invalid_argument("config: degree must lie in [1, 3]");
        }
    }
    if (forced_omega && !(*forced_omega >= 0.0 && *forced_omega <= 1.0)) {
        throw std::invalid_argument("config: forced omega must lie in [0, 1]");
    }
}

TimeSeries load_experiment_series(const ExperimentConfig& config) {
    config.validate();
    if (config.dataset_path.empty() && config.synth_kind.empty()) {
        throw std::invalid_argument("config: needs a dataset path or a synthetic kind");
    }
    if (!config.dataset_path.empty()) {
        return load_csv(config.dataset_path, config.value_column, config.label_column).series;
    }
    return synth_dataset(config.synth_kind, config.synth_n, config.seed);
}

ComparisonTable run_compare(const TimeSeries& series, const ExperimentConfig& config) {
    config.validate();

    ComparisonTable table;
    table.dataset = series.name.empty() ? "series" : series.name;
    auto [train, test] = train_test_split(series, config.train_fraction);
    table.n_train = train.length();
    table.n_test = test.length();
    table.observed_test = test.values;

    table.rows[0].model = "ARIMA";
    table.rows[1].model = "PC";
    table.rows[2].model = "Hybrid";

    // ARIMA row.
    try {
        const auto start = Clock::now();
        ArimaModel model;
        if (config.arima.automatic) {
            model = auto_order(train).model;
        } else {
            model = fit_arima(train, config.arima.order);
        }
        std::vector<double> fc = rolling_forecast(model, train, test);
        const double secs = seconds_since(start);
        table.rows[0].metrics = evaluate(test.values, fc, secs);
        table.rows[0].params = arima_params_text(model);
        table.rows[0].forecasts = std::move(fc);
        table.rows[0].ok = true;
    } catch (const std::exception& e) {
        table.rows[0].error = e.what();
    }

    // PC row.
    try {
        const auto start = Clock::now();
        PcConfig cfg;
        if (config.pc.automatic) {
            cfg = select_pc_config(train, config.pc.window_grid, config.pc.degree_grid,
                                   config.pc.scale_inputs);
        } else {
            cfg = PcConfig{config.pc.window_len, config.pc.degree};
        }
        const PolyModel model = fit_pc(train, cfg.window_len, cfg.degree, config.pc.scale_inputs);
        std::vector<double> fc = rolling_forecast_pc(model, train, test);
        const double secs = seconds_since(start);
        table.rows[1].metrics = evaluate(test.values, fc, secs);
        table.rows[1].params = pc_params_text(model);
        table.rows[1].forecasts = std::move(fc);
        table.rows[1].ok = true;
    } catch (const std::exception& e) {
        table.rows[1].error = e.what();
    }

    // Hybrid row, timed end to end on its own fits.
    try {
        const auto start = Clock::now();
        const HybridModel model = fit_hybrid(train, config.arima, config.pc, config.omega_mode,
                                             config.forced_omega);
        std::vector<double> fc = rolling_forecast_hybrid(model, train, test);
        const double secs = seconds_since(start);
        table.rows[2].metrics = evaluate(test.values, fc, secs);
        char omega_buf[32];
        std::snprintf(omega_buf, sizeof(omega_buf), "%.4f", model.omega);
        table.rows[2].params = std::string("omega=") + omega_buf + " " +
                               arima_params_text(model.arima) + " " + pc_params_text(model.pc);
        table.rows[2].forecasts = std::move(fc);
        table.rows[2].ok = true;
    } catch (const std::exception& e) {
        table.rows[2].error = e.what();
    }

    if (!config.output_dir.empty()) {
        write_outputs(table, config.output_dir);
    }
    return table;
}

ComparisonTable run_compare(const ExperimentConfig& config) {
    return run_compare(load_experiment_series(config), config);
}

std::string ComparisonTable::to_text() const {
    std::ostringstream out;
    out << "dataset: " << dataset << " (train " << n_train << ", test " << n_test << ")\n";
    out << pad("Model", 28) << pad("Time (s)", 12) << pad("MAE", 14) << pad("RMSE", 14)
        << pad("CV(RMSE)%", 14) << "Params\n";
    for (const auto& row : rows) {
        std::string label = row.model;
        if (row.model == "PC") label = "polynomial classifier (PC)";
        if (row.model == "Hybrid") label = "Hybrid ARIMA and PC";
        out << pad(label, 28);
        if (row.ok) {
            out << pad(fmt4(row.metrics.wall_seconds), 12) << pad(fmt4(row.metrics.mae), 14)
                << pad(fmt4(row.metrics.rmse), 14) << pad(fmt4(row.metrics.cv_rmse_percent), 14)
                << row.params;
        } else {
            out << "error: " << row.error;
        }
        out << "\n";
    }
    return out.str();
}

std::string ComparisonTable::to_csv() const {
    std::ostringstream out;
    out << "model,time_s,mae,rmse,cv_rmse_percent,params\n";
    for (const auto& row : rows) {
        out << row.model << ',';
        if (row.ok) {
            out << fmt4(row.metrics.wall_seconds) << ',' << fmt4(row.metrics.mae) << ','
                << fmt4(row.metrics.rmse) << ',' << fmt4(row.metrics.cv_rmse_percent) << ",\""
                << row.params << '"';
        } else {
            out << ",,,,\"error: " << row.error << '"';
        }
        out << '\n';
    }
    return out.str();
}

void write_outputs(const ComparisonTable& table, const std::string& output_dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(output_dir, ec);
    if (ec) {
        throw IoError("write_outputs: cannot create " + output_dir + ": " + ec.message());
    }

    {
        std::ofstream out(fs::path(output_dir) / "comparison.csv", std::ios::binary);
        if (!out) throw IoError("write_outputs: cannot write comparison.csv");
        out << table.to_csv();
    }

    {
        std::ofstream out(fs::path(output_dir) / "forecasts.csv", std::ios::binary);
        if (!out) throw IoError("write_outputs: cannot write forecasts.csv");
        out << "index,observed,arima,pc,hybrid\n";
        char buf[64];
        for (std::size_t i = 0; i < table.observed_test.size(); ++i) {
            std::snprintf(buf, sizeof(buf), "%zu,%.17g", i, table.observed_test[i]);
            out << buf;
            for (const auto& row : table.rows) {
                if (row.ok && i < row.forecasts.size()) {
                    std::snprintf(buf, sizeof(buf), ",%.17g", row.forecasts[i]);
                    out << buf;
                } else {
                    out << ',';
                }
            }
            out << '\n';
        }
    }

    std::vector<PlotSeries> plot_series;
    for (const auto& row : table.rows) {
        if (row.ok) plot_series.push_back(PlotSeries{row.model, row.forecasts});
    }
    emit_plot(table.observed_test, plot_series,
              (fs::path(output_dir) / "plot.svg").string(), table.dataset);
}

std::string DegreeSweepTable::to_text() const {
    std::ostringstream out;
    out << "dataset: " << dataset << ", window length " << window_len << "\n";
    out << pad("Degree", 8) << pad("Time (s)", 12) << pad("MAE", 14) << pad("RMSE", 14)
        << "CV(RMSE)%\n";
    for (const auto& row : rows) {
        out << pad(std::to_string(row.degree), 8);
        if (row.ok) {
            out << pad(fmt4(row.metrics.wall_seconds), 12) << pad(fmt4(row.metrics.mae), 14)
                << pad(fmt4(row.metrics.rmse), 14) << fmt4(row.metrics.cv_rmse_percent);
        } else {
            out << "error: " << row.error;
        }
        out << "\n";
    }
    return out.str();
}

DegreeSweepTable run_degree_sweep(const TimeSeries& series, const ExperimentConfig& config) {
    config.validate();

    DegreeSweepTable table;
    table.dataset = series.name.empty() ? "series" : series.name;
    auto [train, test] = train_test_split(series, config.train_fraction);

    if (config.pc.automatic) {
        table.window_len = select_pc_config(train, config.pc.window_grid, config.pc.degree_grid,
                                            config.pc.scale_inputs)
                               .window_len;
    } else {
        table.window_len = config.pc.window_len;
    }

    for (int degree = kMinPcDegree; degree <= kMaxPcDegree; ++degree) {
        SweepRow& row = table.rows[static_cast<std::size_t>(degree - 1)];
        row.degree = degree;
        try {
            const auto start = Clock::now();
            const PolyModel model =
                fit_pc(train, table.window_len, degree, config.pc.scale_inputs);
            const std::vector<double> fc = rolling_forecast_pc(model, train, test);
            row.metrics = evaluate(test.values, fc, seconds_since(start));
            row.ok = true;
        } catch (const std::exception& e) {
            row.error = e.what();
        }
    }
    return table;
}

DegreeSweepTable run_degree_sweep(const ExperimentConfig& config) {
    return run_degree_sweep(load_experiment_series(config), config);
}

}  // namespace tsh
