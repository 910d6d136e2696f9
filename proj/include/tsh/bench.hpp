#ifndef TSH_BENCH_HPP
#define TSH_BENCH_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tsh/hybrid.hpp"
#include "tsh/metrics.hpp"
#include "tsh/series.hpp"

namespace tsh {

/// Everything one benchmark run needs. Input comes from `dataset_path` or,
/// when that is empty, from the synthetic generator named by `synth_kind`.
struct ExperimentConfig {
    std::string dataset_path;
    std::string value_column = "value";
    std::optional<std::string> label_column;
    std::string synth_kind;      // used when dataset_path is empty
    std::size_t synth_n = 500;

    double train_fraction = 0.8;
    ArimaSpec arima;
    PcSpec pc;
    OmegaMode omega_mode = OmegaMode::ValidationTail;
    std::optional<double> forced_omega;  // diagnostic override of the fitted weight
    std::uint64_t seed = 42;
    std::string output_dir;  // empty: no files written

    void validate() const;
};

struct ModelRow {
    std::string model;   // "ARIMA", "PC" or "Hybrid"
    bool ok = false;
    std::string error;
    MetricsReport metrics;
    std::string params;  // chosen hyperparameters, human readable
    std::vector<double> forecasts;
};

/// One row per model, paper-style column order: Time (s), MAE, RMSE,
/// CV(RMSE)%. A failing model yields an error row instead of aborting the
/// comparison.
struct ComparisonTable {
    std::string dataset;
    std::size_t n_train = 0;
    std::size_t n_test = 0;
    std::vector<double> observed_test;
    std::array<ModelRow, 3> rows;  // ARIMA, PC, Hybrid

    std::string to_text() const;
    std::string to_csv() const;
};

TimeSeries load_experiment_series(const ExperimentConfig& config);

ComparisonTable run_compare(const TimeSeries& series, const ExperimentConfig& config);

/// Convenience entry that loads the series named by the config first.
ComparisonTable run_compare(const ExperimentConfig& config);

/// Writes comparison.csv, forecasts.csv and plot.svg under config.output_dir.
void write_outputs(const ComparisonTable& table, const std::string& output_dir);

struct SweepRow {
    int degree = 0;
    bool ok = false;
    std::string error;
    MetricsReport metrics;
};

struct DegreeSweepTable {
    std::string dataset;
    int window_len = 0;
    std::array<SweepRow, 3> rows;  // degrees 1..3

    std::string to_text() const;
};

/// Test metrics per polynomial degree at a fixed window length (taken from
/// the config or selected automatically).
DegreeSweepTable run_degree_sweep(const TimeSeries& series, const ExperimentConfig& config);
DegreeSweepTable run_degree_sweep(const ExperimentConfig& config);

}  // namespace tsh

#endif
