#ifndef TSH_HYBRID_HPP
#define TSH_HYBRID_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "tsh/arima.hpp"
#include "tsh/polycls.hpp"
#include "tsh/series.hpp"

namespace tsh {

struct OmegaEstimate {
    double omega = 0.5;            // clipped to [0, 1]
    double omega_unclipped = 0.5;
    bool degenerate = false;       // component forecasts effectively identical
};

enum class OmegaMode { ValidationTail, InSample };

struct ArimaSpec {
    bool automatic = true;
    ArimaOrder order;  // used when !automatic
};

struct PcSpec {
    bool automatic = true;
    int window_len = 0;  // used when !automatic
    int degree = 0;
    bool scale_inputs = false;
    std::vector<int> window_grid = default_window_grid();
    std::vector<int> degree_grid = default_degree_grid();
};

/// Records where the combination weight came from. The aligned forecast
/// triples are kept for diagnostics and optimality checks.
struct OmegaFitWindow {
    std::string mode;        // "validation-tail", "in-sample" or "forced"
    std::size_t start = 0;   // first series index covered by the window
    std::size_t length = 0;
    std::vector<double> y_true;
    std::vector<double> y_arima;
    std::vector<double> y_pc;
};

struct HybridModel {
    ArimaModel arima;
    PolyModel pc;
    double omega = 0.5;
    double omega_unclipped = 0.5;
    bool omega_degenerate = false;
    OmegaFitWindow omega_fit_window;
};

/// Closed-form minimizer of the squared combination error, clipped to
/// [0, 1]. Identical forecasts make the weight unidentifiable; that case
/// returns 0.5 with the degenerate flag set.
OmegaEstimate optimal_omega(const std::vector<double>& y_true,
                            const std::vector<double>& y_arima,
                            const std::vector<double>& y_pc);

std::vector<double> combine(const std::vector<double>& y_arima,
                            const std::vector<double>& y_pc, double omega);

/// Fits both components, estimates omega on held-out one-step forecasts
/// (validation-tail mode: components fitted on the first 80% of train,
/// weight fitted on the last 20%, components then refit on all of train)
/// and returns the assembled model. `forced_omega` skips estimation.
HybridModel fit_hybrid(const TimeSeries& train, const ArimaSpec& arima_spec = {},
                       const PcSpec& pc_spec = {},
                       OmegaMode omega_mode = OmegaMode::ValidationTail,
                       std::optional<double> forced_omega = std::nullopt);

std::vector<double> rolling_forecast_hybrid(const HybridModel& model, const TimeSeries& train,
                                            const TimeSeries& test);

}  // namespace tsh

#endif
