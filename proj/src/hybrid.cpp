#include "tsh/hybrid.hpp"

#include <algorithm>
#include <cmath>

#include "tsh/errors.hpp"

namespace tsh {

namespace {

TimeSeries head_of(const TimeSeries& s, std::size_t len) {
    return TimeSeries(std::vector<double>(s.values.begin(),
                                          s.values.begin() + static_cast<std::ptrdiff_t>(len)));
}

TimeSeries tail_of(const TimeSeries& s, std::size_t from) {
    return TimeSeries(std::vector<double>(s.values.begin() + static_cast<std::ptrdiff_t>(from),
                                          s.values.end()));
}

template <typename Fn>
auto named_stage(const char* component, Fn&& fn) {
    try {
        return fn();
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(std::string(component) + ": " + e.what());
    } catch (const DegenerateInput& e) {
        throw DegenerateInput(std::string(component) + ": " + e.what());
    }
}

}  // namespace

OmegaEstimate optimal_omega(const std::vector<double>& y_true,
                            const std::vector<double>& y_arima,
                            const std::vector<double>& y_pc) {
    const std::size_t n = y_true.size();
    if (n == 0) {
        throw std::invalid_argument("optimal_omega: empty forecast window");
    }
    if (y_arima.size() != n || y_pc.size() != n) {
        throw std::invalid_argument("optimal_omega: sequences must share one length");
    }

    double num = 0.0;
    double den = 0.0;
    double arima_scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double gap = y_arima[i] - y_pc[i];
        num += gap * (y_true[i] - y_pc[i]);
        den += gap * gap;
        arima_scale += y_arima[i] * y_arima[i];
    }

    OmegaEstimate est;
    if (den <= 1e-12 * arima_scale) {
        est.degenerate = true;  // weight unidentifiable; 0.5 is the symmetric pick
        return est;
    }
    est.omega_unclipped = num / den;
    est.omega = std::clamp(est.omega_unclipped, 0.0, 1.0);
    return est;
}

std::vector<double> combine(const std::vector<double>& y_arima,
                            const std::vector<double>& y_pc, double omega) {
    if (y_arima.size() != y_pc.size()) {
        throw std::invalid_argument("combine: forecast lengths differ");
    }
    if (!(omega >= 0.0 && omega <= 1.0)) {
        throw std::invalid_argument("combine: omega must lie in [0, 1]");
    }
    std::vector<double> out(y_arima.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = omega * y_arima[i] + (1.0 - omega) * y_pc[i];
    }
    return out;
}

HybridModel fit_hybrid(const TimeSeries& train, const ArimaSpec& arima_spec,
                       const PcSpec& pc_spec, OmegaMode omega_mode,
                       std::optional<double> forced_omega) {
    HybridModel model;

    if (forced_omega) {
        if (!(*forced_omega >= 0.0 && *forced_omega <= 1.0)) {
            throw std::invalid_argument("fit_hybrid: forced omega must lie in [0, 1]");
        }
        ArimaOrder order = arima_spec.automatic
                               ? named_stage("arima", [&] { return auto_order(train); }).model.order
                               : arima_spec.order;
        PcConfig pc = pc_spec.automatic
                          ? named_stage("pc", [&] {
                                return select_pc_config(train, pc_spec.window_grid,
                                                        pc_spec.degree_grid, pc_spec.scale_inputs);
                            })
                          : PcConfig{pc_spec.window_len, pc_spec.degree};
        model.arima = named_stage("arima", [&] { return fit_arima(train, order); });
        model.pc = named_stage("pc", [&] {
            return fit_pc(train, pc.window_len, pc.degree, pc_spec.scale_inputs);
        });
        model.omega = *forced_omega;
        model.omega_unclipped = *forced_omega;
        model.omega_fit_window.mode = "forced";
        return model;
    }

    if (omega_mode == OmegaMode::ValidationTail) {
        const std::size_t n = train.length();
        const std::size_t prefix_len =
            static_cast<std::size_t>(std::floor(0.8 * static_cast<double>(n)));
        if (prefix_len < 2 || prefix_len >= n) {
            throw std::invalid_argument("fit_hybrid: train too short for a validation tail");
        }
        const TimeSeries prefix = head_of(train, prefix_len);
        const TimeSeries tail = tail_of(train, prefix_len);

        // Hyperparameters resolve on the prefix; the tail stays unseen until
        // the weight fit.
        const ArimaOrder order =
            arima_spec.automatic
                ? named_stage("arima", [&] { return auto_order(prefix); }).model.order
                : arima_spec.order;
        const PcConfig pc_cfg =
            pc_spec.automatic
                ? named_stage("pc", [&] {
                      return select_pc_config(prefix, pc_spec.window_grid, pc_spec.degree_grid,
                                              pc_spec.scale_inputs);
                  })
                : PcConfig{pc_spec.window_len, pc_spec.degree};

        const ArimaModel arima_prefix =
            named_stage("arima", [&] { return fit_arima(prefix, order); });
        const PolyModel pc_prefix = named_stage("pc", [&] {
            return fit_pc(prefix, pc_cfg.window_len, pc_cfg.degree, pc_spec.scale_inputs);
        });

        OmegaFitWindow window;
        window.mode = "validation-tail";
        window.start = prefix_len;
        window.length = tail.length();
        window.y_true = tail.values;
        window.y_arima =
            named_stage("arima", [&] { return rolling_forecast(arima_prefix, prefix, tail); });
        window.y_pc =
            named_stage("pc", [&] { return rolling_forecast_pc(pc_prefix, prefix, tail); });

        const OmegaEstimate est = optimal_omega(window.y_true, window.y_arima, window.y_pc);
        model.omega = est.omega;
        model.omega_unclipped = est.omega_unclipped;
        model.omega_degenerate = est.degenerate;
        model.omega_fit_window = std::move(window);

        // Refit on the full training range so test forecasts see all data.
        model.arima = named_stage("arima", [&] { return fit_arima(train, order); });
        model.pc = named_stage("pc", [&] {
            return fit_pc(train, pc_cfg.window_len, pc_cfg.degree, pc_spec.scale_inputs);
        });
        return model;
    }

    // In-sample mode: fit on all of train, weight from aligned fitted values.
    const ArimaOrder order =
        arima_spec.automatic
            ? named_stage("arima", [&] { return auto_order(train); }).model.order
            : arima_spec.order;
    const PcConfig pc_cfg =
        pc_spec.automatic
            ? named_stage("pc", [&] {
                  return select_pc_config(train, pc_spec.window_grid, pc_spec.degree_grid,
                                          pc_spec.scale_inputs);
              })
            : PcConfig{pc_spec.window_len, pc_spec.degree};

    model.arima = named_stage("arima", [&] { return fit_arima(train, order); });
    model.pc = named_stage("pc", [&] {
        return fit_pc(train, pc_cfg.window_len, pc_cfg.degree, pc_spec.scale_inputs);
    });

    // First index both models can predict: ARIMA needs d+p history values,
    // the classifier needs a full window.
    const std::size_t arima_start =
        static_cast<std::size_t>(model.arima.order.d + model.arima.order.p);
    const std::size_t pc_start = static_cast<std::size_t>(pc_cfg.window_len);
    const std::size_t start = std::max(arima_start, pc_start);
    const std::size_t n = train.length();
    if (start >= n) {
        throw std::invalid_argument("fit_hybrid: no aligned in-sample window");
    }

    const std::vector<double> arima_fit =
        named_stage("arima", [&] { return in_sample_predictions(model.arima, train); });

    OmegaFitWindow window;
    window.mode = "in-sample";
    window.start = start;
    window.length = n - start;
    window.y_true.assign(train.values.begin() + static_cast<std::ptrdiff_t>(start),
                         train.values.end());
    window.y_arima.assign(arima_fit.end() - static_cast<std::ptrdiff_t>(n - start),
                          arima_fit.end());
    window.y_pc.reserve(n - start);
    for (std::size_t k = start; k < n; ++k) {
        const std::vector<double> recent(
            train.values.begin() + static_cast<std::ptrdiff_t>(k - pc_start),
            train.values.begin() + static_cast<std::ptrdiff_t>(k));
        window.y_pc.push_back(forecast_pc(model.pc, recent));
    }

    const OmegaEstimate est = optimal_omega(window.y_true, window.y_arima, window.y_pc);
    model.omega = est.omega;
    model.omega_unclipped = est.omega_unclipped;
    model.omega_degenerate = est.degenerate;
    model.omega_fit_window = std::move(window);
    return model;
}

std::vector<double> rolling_forecast_hybrid(const HybridModel& model, const TimeSeries& train,
                                            const TimeSeries& test) {
    const std::vector<double> fa = rolling_forecast(model.arima, train, test);
    const std::vector<double> fp = rolling_forecast_pc(model.pc, train, test);
    return combine(fa, fp, model.omega);
}

}  // namespace tsh
