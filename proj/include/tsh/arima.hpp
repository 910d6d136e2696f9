#ifndef TSH_ARIMA_HPP
#define TSH_ARIMA_HPP

#include <cstddef>
#include <vector>

#include "tsh/series.hpp"

namespace tsh {

/// Model order. The grid bounds (p, q <= 5, d <= 2) cap the automatic
/// search and are enforced on explicit orders as well.
struct ArimaOrder {
    int p = 0;
    int d = 0;
    int q = 0;

    static constexpr int kMaxP = 5;
    static constexpr int kMaxQ = 5;
    static constexpr int kMaxD = 2;

    void validate() const;
};

/// Fitted ARIMA(p,d,q): y on the d-times-differenced scale follows
/// w_t = c + sum phi_i w_{t-i} - sum theta_j e_{t-j} + e_t.
/// The intercept is free only when d == 0.
struct ArimaModel {
    ArimaOrder order;
    std::vector<double> phi;    // AR coefficients, length p
    std::vector<double> theta;  // MA coefficients, length q
    double intercept = 0.0;
    double sigma2 = 0.0;
    std::vector<double> residuals;  // differenced scale; first p entries are 0
    double sse = 0.0;
    double aic = 0.0;
    int n_effective = 0;
    bool converged = true;
};

struct CssResult {
    double sse = 0.0;
    std::vector<double> residuals;  // length of w; entries at t <= p fixed to 0
};

/// Conditional sum of squares: residual recursion with the first p
/// observations conditioned on and pre-sample residuals pinned to zero.
CssResult css_objective(const std::vector<double>& phi, const std::vector<double>& theta,
                        double intercept, const std::vector<double>& w);

/// Toeplitz solve of the autocorrelation equations for a deterministic AR
/// start point. Falls back to all zeros when the system is unsolvable.
std::vector<double> yule_walker_init(const std::vector<double>& w, int p);

/// Largest root magnitude of z^k - a_1 z^{k-1} - ... - a_k. Values below 1
/// mean the recursion with coefficients `a` is stable.
double companion_spectral_radius(const std::vector<double>& coeffs);

ArimaModel fit_arima(const TimeSeries& train, const ArimaOrder& order);

/// Smallest differencing order in {0,1,2} whose result looks stationary
/// (lag-1 autocorrelation under 0.95 without inflating the spread).
int choose_d(const TimeSeries& s, int max_d = ArimaOrder::kMaxD);

struct OrderCandidate {
    ArimaOrder order;
    double aic = 0.0;
    bool ok = false;
};

struct AutoOrderResult {
    ArimaModel model;
    std::vector<OrderCandidate> candidates;  // every (p,q) pair evaluated
};

/// Grid search over (p,q) at the differencing order picked by choose_d,
/// keeping the fit with minimal AIC (ties: smaller p+q, then smaller p).
AutoOrderResult auto_order(const TimeSeries& train, int max_p = ArimaOrder::kMaxP,
                           int max_q = ArimaOrder::kMaxQ);

/// One-step-ahead forecasts over the test range with frozen parameters.
/// After each step the realized test value and its residual are ingested.
std::vector<double> rolling_forecast(const ArimaModel& model, const TimeSeries& train,
                                     const TimeSeries& test);

/// In-sample one-step predictions aligned with the raw series: entry k
/// predicts train[k] for k in [d + p, n). Used for in-sample weight fitting.
std::vector<double> in_sample_predictions(const ArimaModel& model, const TimeSeries& train);

}  // namespace tsh

#endif
