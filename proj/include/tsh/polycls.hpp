#ifndef TSH_POLYCLS_HPP
#define TSH_POLYCLS_HPP

#include <cstddef>
#include <vector>

#include "tsh/linalg.hpp"
#include "tsh/series.hpp"

namespace tsh {

/// All monomials of total degree <= K over an L-long lag window, ordered by
/// total degree ascending and then lexicographically descending on the
/// exponent tuple: for L=2, K=2 that is [1, t1, t2, t1^2, t1*t2, t2^2].
struct MonomialBasis {
    int window_len = 0;
    int degree = 0;
    std::vector<std::vector<int>> exponents;

    std::size_t size() const { return exponents.size(); }
};

/// One-layer polynomial forecaster: monomial expansion of the last L
/// observations, weights solved in closed form.
struct PolyModel {
    MonomialBasis basis;
    std::vector<double> weights;
    double train_sse = 0.0;
    SolveReport solve_report;

    // Optional min-max normalization applied to inputs and target before
    // expansion (off by default; forecasts are mapped back to raw scale).
    bool scaled = false;
    double scale_lo = 0.0;
    double scale_hi = 1.0;
};

struct PcConfig {
    int window_len = 0;
    int degree = 0;
};

constexpr int kMinPcDegree = 1;
constexpr int kMaxPcDegree = 3;

MonomialBasis build_basis(int window_len, int degree);

std::vector<double> expand(const std::vector<double>& window, const MonomialBasis& basis);

PolyModel fit_pc(const TimeSeries& train, int window_len, int degree,
                 bool scale_inputs = false);

double forecast_pc(const PolyModel& model, const std::vector<double>& recent);

/// One-step forecasts over the test range: each step windows the last L
/// observed values (training tail, then actual test values). Weights stay
/// frozen.
std::vector<double> rolling_forecast_pc(const PolyModel& model, const TimeSeries& train,
                                        const TimeSeries& test);

inline const std::vector<int>& default_window_grid() {
    static const std::vector<int> grid{2, 3, 4, 6, 8, 12};
    return grid;
}

inline const std::vector<int>& default_degree_grid() {
    static const std::vector<int> grid{1, 2, 3};
    return grid;
}

/// Picks (L, K) by one-step validation RMSE on the last 20% of `train`
/// (fit on the first 80%). Ties prefer the smaller degree, then the
/// smaller window.
PcConfig select_pc_config(const TimeSeries& train,
                          const std::vector<int>& window_grid = default_window_grid(),
                          const std::vector<int>& degree_grid = default_degree_grid(),
                          bool scale_inputs = false);

}  // namespace tsh

#endif
