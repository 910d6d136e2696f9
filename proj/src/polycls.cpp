#include "tsh/polycls.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

#include "tsh/errors.hpp"

namespace tsh {

namespace {

// Exponent tuples with sum == total, first slot descending; recursing this
// way yields lexicographically descending order within each degree block.
void enumerate_exponents(int slots, int total, std::vector<int>& prefix,
                         std::vector<std::vector<int>>& out) {
    if (slots == 1) {
        prefix.push_back(total);
        out.push_back(prefix);
        prefix.pop_back();
        return;
    }
    for (int e = total; e >= 0; --e) {
        prefix.push_back(e);
        enumerate_exponents(slots - 1, total - e, prefix, out);
        prefix.pop_back();
    }
}

double int_pow(double base, int exp) {
    double acc = 1.0;
    for (int i = 0; i < exp; ++i) acc *= base;
    return acc;
}

double scale_value(const PolyModel& m, double x) {
    return (x - m.scale_lo) / (m.scale_hi - m.scale_lo);
}

double unscale_value(const PolyModel& m, double u) {
    return m.scale_lo + u * (m.scale_hi - m.scale_lo);
}

}  // namespace

MonomialBasis build_basis(int window_len, int degree) {
    if (window_len < 1) {
        throw std::invalid_argument("build_basis: window length must be >= 1");
    }
    if (degree < kMinPcDegree || degree > kMaxPcDegree) {
        throw std::invalid_argument("build_basis: degree must lie in [" +
                                    std::to_string(kMinPcDegree) + ", " +
                                    std::to_string(kMaxPcDegree) + "], got " +
                                    std::to_string(degree));
    }

    MonomialBasis basis;
    basis.window_len = window_len;
    basis.degree = degree;
    std::vector<int> prefix;
    for (int total = 0; total <= degree; ++total) {
        enumerate_exponents(window_len, total, prefix, basis.exponents);
    }
    return basis;
}

std::vector<double> expand(const std::vector<double>& window, const MonomialBasis& basis) {
    if (window.size() != static_cast<std::size_t>(basis.window_len)) {
        throw std::invalid_argument("expand: window length " + std::to_string(window.size()) +
                                    " does not match basis window length " +
                                    std::to_string(basis.window_len));
    }
    std::vector<double> out;
    out.reserve(basis.size());
    for (const auto& exps : basis.exponents) {
        double term = 1.0;
        for (std::size_t i = 0; i < exps.size(); ++i) {
            if (exps[i] != 0) term *= int_pow(window[i], exps[i]);
        }
        out.push_back(term);
    }
    return out;
}

PolyModel fit_pc(const TimeSeries& train, int window_len, int degree, bool scale_inputs) {
    PolyModel model;
    model.basis = build_basis(window_len, degree);
    const std::size_t m = model.basis.size();

    const std::size_t min_len = static_cast<std::size_t>(window_len) + m + 1;
    if (train.length() < min_len) {
        throw std::invalid_argument("fit_pc: series of length " + std::to_string(train.length()) +
                                    " needs at least " + std::to_string(min_len) +
                                    " observations for window " + std::to_string(window_len) +
                                    " and degree " + std::to_string(degree));
    }

    std::vector<double> values = train.values;
    if (scale_inputs) {
        const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
        model.scaled = true;
        model.scale_lo = *lo_it;
        model.scale_hi = (*hi_it > *lo_it) ? *hi_it : *lo_it + 1.0;
        for (double& v : values) v = scale_value(model, v);
    }

    const WindowMatrix wm = build_windows(TimeSeries(std::move(values)), window_len);
    const std::size_t n = wm.rows.size();

    DenseMatrix design(n, m);
    for (std::size_t i = 0; i < n; ++i) {
        const std::vector<double> row = expand(wm.rows[i], model.basis);
        for (std::size_t j = 0; j < m; ++j) design.at(i, j) = row[j];
    }

    LeastSquaresResult ls = solve_least_squares(design, wm.targets);
    model.weights = std::move(ls.weights);
    model.solve_report = ls.report;
    model.train_sse = ls.report.residual_norm * ls.report.residual_norm;
    return model;
}

double forecast_pc(const PolyModel& model, const std::vector<double>& recent) {
    if (recent.size() != static_cast<std::size_t>(model.basis.window_len)) {
        throw std::invalid_argument("forecast_pc: window length " + std::to_string(recent.size()) +
                                    " does not match model window length " +
                                    std::to_string(model.basis.window_len));
    }

    std::vector<double> window = recent;
    if (model.scaled) {
        for (double& v : window) v = scale_value(model, v);
    }
    const std::vector<double> features = expand(window, model.basis);
    double acc = 0.0;
    for (std::size_t j = 0; j < features.size(); ++j) acc += model.weights[j] * features[j];
    return model.scaled ? unscale_value(model, acc) : acc;
}

std::vector<double> rolling_forecast_pc(const PolyModel& model, const TimeSeries& train,
                                        const TimeSeries& test) {
    const std::size_t window_len = static_cast<std::size_t>(model.basis.window_len);
    if (train.length() < window_len) {
        throw std::invalid_argument("rolling_forecast_pc: training series shorter than window");
    }

    std::vector<double> history(train.values.end() - static_cast<std::ptrdiff_t>(window_len),
                                train.values.end());
    std::vector<double> out;
    out.reserve(test.length());
    for (double actual : test.values) {
        out.push_back(forecast_pc(model, history));
        history.erase(history.begin());
        history.push_back(actual);
    }
    return out;
}

PcConfig select_pc_config(const TimeSeries& train, const std::vector<int>& window_grid,
                          const std::vector<int>& degree_grid, bool scale_inputs) {
    if (window_grid.empty() || degree_grid.empty()) {
        throw std::invalid_argument("select_pc_config: empty candidate grid");
    }

    const std::size_t n = train.length();
    const std::size_t fit_len = static_cast<std::size_t>(std::floor(0.8 * static_cast<double>(n)));
    if (fit_len < 2 || fit_len >= n) {
        throw std::invalid_argument("select_pc_config: series too short to hold out validation");
    }

    const TimeSeries fit_part(
        std::vector<double>(train.values.begin(), train.values.begin() + static_cast<std::ptrdiff_t>(fit_len)));
    const TimeSeries val_part(
        std::vector<double>(train.values.begin() + static_cast<std::ptrdiff_t>(fit_len), train.values.end()));

    bool found = false;
    PcConfig best;
    double best_rmse = std::numeric_limits<double>::infinity();

    // Fixed iteration order plus (rmse, K, L) comparison keeps selection
    // deterministic.
    for (int window_len : window_grid) {
        for (int degree : degree_grid) {
            PolyModel candidate;
            try {
                candidate = fit_pc(fit_part, window_len, degree, scale_inputs);
            } catch (const std::invalid_argument&) {
                continue;  // not enough data for this configuration
            }
            const std::vector<double> fc = rolling_forecast_pc(candidate, fit_part, val_part);
            double sse = 0.0;
            for (std::size_t i = 0; i < fc.size(); ++i) {
                const double e = fc[i] - val_part.values[i];
                sse += e * e;
            }
            const double rmse = std::sqrt(sse / static_cast<double>(fc.size()));
            if (!std::isfinite(rmse)) continue;

            const auto cand_key = std::make_tuple(rmse, degree, window_len);
            const auto best_key = std::make_tuple(best_rmse, best.degree, best.window_len);
            if (!found || cand_key < best_key) {
                found = true;
                best.window_len = window_len;
                best.degree = degree;
                best_rmse = rmse;
            }
        }
    }

    if (!found) {
        throw std::invalid_argument(
            "select_pc_config: no (window, degree) candidate is feasible for length " +
            std::to_string(n));
    }
    return best;
}

}  // namespace tsh
