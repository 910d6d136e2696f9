#include "tsh/arima.hpp"

#include <atomic>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <thread>

#include "tsh/errors.hpp"
#include "tsh/linalg.hpp"
#include "tsh/nelder_mead.hpp"

namespace tsh {

namespace {

constexpr double kStationarityPenalty = 1e10;
constexpr double kVarianceFloor = 1e-300;  // keeps ln(sse/n) finite on exact fits

// Residual recursion shared by css_objective and the optimizer loop.
// `eps` is resized to w.size(); its first p entries stay zero.
double css_sse(const std::vector<double>& phi, const std::vector<double>& theta,
               double intercept, const std::vector<double>& w, std::vector<double>& eps) {
    const std::size_t n = w.size();
    const std::size_t p = phi.size();
    const std::size_t q = theta.size();
    eps.assign(n, 0.0);

    double sse = 0.0;
    for (std::size_t t = p; t < n; ++t) {
        double pred = intercept;
        for (std::size_t i = 0; i < p; ++i) pred += phi[i] * w[t - 1 - i];
        for (std::size_t j = 0; j < q; ++j) {
            if (t >= j + 1) pred -= theta[j] * eps[t - 1 - j];
        }
        const double e = w[t] - pred;
        eps[t] = e;
        sse += e * e;
    }
    return sse;
}

double lag1_autocorrelation(const std::vector<double>& v) {
    const double m = mean_of(v);
    double denom = 0.0;
    for (double x : v) denom += (x - m) * (x - m);
    if (denom <= 0.0) return 0.0;  // constant: treat as uncorrelated
    double num = 0.0;
    for (std::size_t t = 0; t + 1 < v.size(); ++t) num += (v[t] - m) * (v[t + 1] - m);
    return num / denom;
}

// Amount by which either characteristic polynomial breaks the unit-circle
// condition; zero means the parameter vector is admissible. The +1e-12
// keeps a radius of exactly 1 rejected.
double stability_excess(const std::vector<double>& phi, const std::vector<double>& theta) {
    double excess = 0.0;
    const double rho_ar = companion_spectral_radius(phi);
    const double rho_ma = companion_spectral_radius(theta);
    if (rho_ar >= 1.0) excess += rho_ar - 1.0 + 1e-12;
    if (rho_ma >= 1.0) excess += rho_ma - 1.0 + 1e-12;
    return excess;
}

void run_indexed_tasks(std::size_t count, const std::function<void(std::size_t)>& task) {
    unsigned workers = std::thread::hardware_concurrency();
    if (workers == 0) workers = 1;
    workers = std::min<unsigned>(workers, static_cast<unsigned>(count));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) task(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned wkr = 0; wkr < workers; ++wkr) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count) return;
                task(i);
            }
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace

void ArimaOrder::validate() const {
    if (p < 0 || p > kMaxP || q < 0 || q > kMaxQ || d < 0 || d > kMaxD) {
        throw std::invalid_argument("ArimaOrder: (p,d,q) must satisfy p<=" +
                                    std::to_string(kMaxP) + ", d<=" + std::to_string(kMaxD) +
                                    ", q<=" + std::to_string(kMaxQ) + " and be non-negative");
    }
}

CssResult css_objective(const std::vector<double>& phi, const std::vector<double>& theta,
                        double intercept, const std::vector<double>& w) {
    if (w.size() <= phi.size()) {
        throw std::invalid_argument("css_objective: series length " + std::to_string(w.size()) +
                                    " must exceed AR order " + std::to_string(phi.size()));
    }
    for (double c : phi) {
        if (!std::isfinite(c)) throw std::invalid_argument("css_objective: non-finite AR coefficient");
    }
    for (double c : theta) {
        if (!std::isfinite(c)) throw std::invalid_argument("css_objective: non-finite MA coefficient");
    }
    if (!std::isfinite(intercept)) {
        throw std::invalid_argument("css_objective: non-finite intercept");
    }

    CssResult res;
    res.sse = css_sse(phi, theta, intercept, w, res.residuals);
    return res;
}

std::vector<double> yule_walker_init(const std::vector<double>& w, int p) {
    if (p <= 0) return {};
    std::vector<double> zeros(static_cast<std::size_t>(p), 0.0);
    if (w.size() <= static_cast<std::size_t>(p)) return zeros;

    std::vector<double> r;
    try {
        r = sample_autocorrelation(TimeSeries(w), p);
    } catch (const std::exception&) {
        return zeros;  // constant or otherwise degenerate series
    }

    DenseMatrix toeplitz(static_cast<std::size_t>(p), static_cast<std::size_t>(p));
    std::vector<double> rhs(static_cast<std::size_t>(p));
    for (int i = 0; i < p; ++i) {
        rhs[static_cast<std::size_t>(i)] = r[static_cast<std::size_t>(i + 1)];
        for (int j = 0; j < p; ++j) {
            toeplitz.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) =
                r[static_cast<std::size_t>(std::abs(i - j))];
        }
    }
    try {
        return solve_linear_system(toeplitz, rhs);
    } catch (const std::exception&) {
        return zeros;
    }
}

double companion_spectral_radius(const std::vector<double>& coeffs) {
    // Roots of z^k - a_1 z^{k-1} - ... - a_k; trailing zero coefficients only
    // add roots at the origin.
    std::vector<double> a = coeffs;
    while (!a.empty() && a.back() == 0.0) a.pop_back();
    const std::size_t k = a.size();
    if (k == 0) return 0.0;
    if (k == 1) return std::fabs(a[0]);
    if (k == 2) {
        const double disc = a[0] * a[0] + 4.0 * a[1];
        if (disc >= 0.0) {
            const double s = std::sqrt(disc);
            return std::max(std::fabs((a[0] + s) / 2.0), std::fabs((a[0] - s) / 2.0));
        }
        return std::sqrt(-a[1]);  // conjugate pair: |z|^2 = product of roots
    }

    // Durand-Kerner on the monic polynomial.
    using cplx = std::complex<double>;
    std::vector<cplx> mono(k + 1);
    mono[0] = 1.0;
    for (std::size_t i = 0; i < k; ++i) mono[i + 1] = -a[i];

    auto eval = [&](cplx z) {
        cplx acc = mono[0];
        for (std::size_t i = 1; i <= k; ++i) acc = acc * z + mono[i];
        return acc;
    };

    std::vector<cplx> roots(k);
    const cplx seed(0.4, 0.9);
    roots[0] = seed;
    for (std::size_t i = 1; i < k; ++i) roots[i] = roots[i - 1] * seed;

    for (int pass = 0; pass < 200; ++pass) {
        double max_delta = 0.0;
        double max_root = 0.0;
        for (std::size_t i = 0; i < k; ++i) {
            cplx denom = 1.0;
            for (std::size_t j = 0; j < k; ++j) {
                if (j == i) continue;
                cplx diff = roots[i] - roots[j];
                if (std::abs(diff) < 1e-30) diff = cplx(1e-30, 1e-30);
                denom *= diff;
            }
            const cplx delta = eval(roots[i]) / denom;
            roots[i] -= delta;
            max_delta = std::max(max_delta, std::abs(delta));
            max_root = std::max(max_root, std::abs(roots[i]));
        }
        if (max_delta < 1e-13 * (1.0 + max_root)) break;
    }

    double radius = 0.0;
    for (const cplx& r : roots) radius = std::max(radius, std::abs(r));
    return radius;
}

ArimaModel fit_arima(const TimeSeries& train, const ArimaOrder& order) {
    order.validate();
    const std::size_t min_len =
        static_cast<std::size_t>(10 + order.d + order.p + order.q);
    if (train.length() < min_len) {
        throw std::invalid_argument("fit_arima: series of length " + std::to_string(train.length()) +
                                    " is below the minimum " + std::to_string(min_len) +
                                    " for order (" + std::to_string(order.p) + "," +
                                    std::to_string(order.d) + "," + std::to_string(order.q) + ")");
    }

    const std::vector<double> w = difference(train, order.d).values;
    const double w_sd = stddev_of(w);
    if (w.size() >= 2 && w_sd <= 0.0) {
        throw DegenerateInput("fit_arima: differenced series is constant");
    }

    const std::size_t p = static_cast<std::size_t>(order.p);
    const std::size_t q = static_cast<std::size_t>(order.q);
    const bool intercept_free = (order.d == 0);

    // Deterministic start: Yule-Walker AR point (zeroed if inadmissible),
    // zero MA, differenced mean for a free intercept.
    std::vector<double> phi0 = yule_walker_init(w, order.p);
    if (companion_spectral_radius(phi0) >= 1.0) phi0.assign(p, 0.0);

    std::vector<double> x0;
    x0.reserve(p + q + 1);
    x0.insert(x0.end(), phi0.begin(), phi0.end());
    x0.insert(x0.end(), q, 0.0);
    if (intercept_free) x0.push_back(mean_of(w));

    ArimaModel model;
    model.order = order;
    model.phi.assign(p, 0.0);
    model.theta.assign(q, 0.0);
    model.intercept = 0.0;

    if (!x0.empty()) {
        std::vector<double> phi_buf(p), theta_buf(q), eps_buf;
        auto unpack = [&](const std::vector<double>& x) {
            for (std::size_t i = 0; i < p; ++i) phi_buf[i] = x[i];
            for (std::size_t j = 0; j < q; ++j) theta_buf[j] = x[p + j];
            return intercept_free ? x[p + q] : 0.0;
        };
        auto objective = [&](const std::vector<double>& x) {
            const double c = unpack(x);
            const double excess = stability_excess(phi_buf, theta_buf);
            if (excess > 0.0) return kStationarityPenalty * (1.0 + excess);
            return css_sse(phi_buf, theta_buf, c, w, eps_buf);
        };

        const NelderMeadResult opt = nelder_mead(objective, x0);
        model.intercept = unpack(opt.x);
        model.phi = phi_buf;
        model.theta = theta_buf;
        model.converged = opt.converged;
    }

    CssResult css = css_objective(model.phi, model.theta, model.intercept, w);
    model.sse = css.sse;
    model.residuals = std::move(css.residuals);
    model.n_effective = static_cast<int>(w.size() - p);
    const double variance =
        std::max(model.sse / static_cast<double>(model.n_effective), kVarianceFloor);
    model.sigma2 = variance;
    const int k_params = order.p + order.q + (intercept_free ? 1 : 0) + 1;
    model.aic = static_cast<double>(model.n_effective) * std::log(variance) +
                2.0 * static_cast<double>(k_params);
    return model;
}

int choose_d(const TimeSeries& s, int max_d) {
    if (s.length() < 20) {
        throw std::invalid_argument("choose_d: needs at least 20 observations");
    }
    max_d = std::min(max_d, ArimaOrder::kMaxD);

    double prev_sd = 0.0;
    int best_d = 0;
    double best_sd = std::numeric_limits<double>::infinity();
    for (int d = 0; d <= max_d; ++d) {
        const std::vector<double> w = difference(s, d).values;
        const double sd = stddev_of(w);
        const double r1 = lag1_autocorrelation(w);
        const bool spread_ok = (d == 0) || (sd <= prev_sd);
        if (r1 < 0.95 && spread_ok) return d;
        if (sd < best_sd) {
            best_sd = sd;
            best_d = d;
        }
        prev_sd = sd;
    }
    return best_d;
}

AutoOrderResult auto_order(const TimeSeries& train, int max_p, int max_q) {
    max_p = std::min(max_p, ArimaOrder::kMaxP);
    max_q = std::min(max_q, ArimaOrder::kMaxQ);
    const int d = choose_d(train);

    std::vector<ArimaOrder> grid;
    for (int p = 0; p <= max_p; ++p) {
        for (int q = 0; q <= max_q; ++q) {
            grid.push_back(ArimaOrder{p, d, q});
        }
    }

    struct Slot {
        ArimaModel model;
        std::exception_ptr error;
        bool ok = false;
    };
    std::vector<Slot> slots(grid.size());

    run_indexed_tasks(grid.size(), [&](std::size_t i) {
        try {
            slots[i].model = fit_arima(train, grid[i]);
            slots[i].ok = true;
        } catch (...) {
            slots[i].error = std::current_exception();
        }
    });

    AutoOrderResult result;
    result.candidates.reserve(grid.size());
    std::exception_ptr last_error;
    bool have_best = false;
    // Fixed scan order makes the tie-break independent of fit scheduling.
    for (std::size_t i = 0; i < grid.size(); ++i) {
        OrderCandidate cand;
        cand.order = grid[i];
        cand.ok = slots[i].ok;
        if (!slots[i].ok) {
            last_error = slots[i].error;
            result.candidates.push_back(cand);
            continue;
        }
        cand.aic = slots[i].model.aic;
        result.candidates.push_back(cand);

        const ArimaModel& m = slots[i].model;
        if (!have_best) {
            result.model = m;
            have_best = true;
            continue;
        }
        const ArimaModel& b = result.model;
        const auto key = [](const ArimaModel& mm) {
            return std::make_tuple(mm.aic, mm.order.p + mm.order.q, mm.order.p);
        };
        if (key(m) < key(b)) result.model = m;
    }

    if (!have_best) {
        if (last_error) std::rethrow_exception(last_error);
        throw DegenerateInput("auto_order: no candidate order could be fitted");
    }
    return result;
}

namespace {

// d-th difference of the trailing d+1 raw values.
double diff_tail_value(const std::vector<double>& raw, int d) {
    std::vector<double> tail(raw.end() - (d + 1), raw.end());
    for (int pass = 0; pass < d; ++pass) {
        for (std::size_t i = 0; i + 1 < tail.size(); ++i) tail[i] = tail[i + 1] - tail[i];
        tail.pop_back();
    }
    return tail[0];
}

double predict_next_diff(const ArimaModel& model, const std::vector<double>& w,
                         const std::vector<double>& eps) {
    const std::size_t p = model.phi.size();
    const std::size_t q = model.theta.size();
    const std::size_t t = w.size();
    double pred = model.intercept;
    for (std::size_t i = 0; i < p; ++i) pred += model.phi[i] * w[t - 1 - i];
    for (std::size_t j = 0; j < q; ++j) {
        if (t >= j + 1) pred -= model.theta[j] * eps[t - 1 - j];
    }
    return pred;
}

}  // namespace

std::vector<double> rolling_forecast(const ArimaModel& model, const TimeSeries& train,
                                     const TimeSeries& test) {
    const int d = model.order.d;
    if (train.length() < static_cast<std::size_t>(d + model.order.p + 1)) {
        throw std::invalid_argument("rolling_forecast: training series too short for the model");
    }

    std::vector<double> raw = train.values;
    std::vector<double> w = difference(train, d).values;
    std::vector<double> eps = css_objective(model.phi, model.theta, model.intercept, w).residuals;

    std::vector<double> out;
    out.reserve(test.length());
    for (double actual : test.values) {
        const double diff_fc = predict_next_diff(model, w, eps);
        out.push_back(extend_integrate(raw, d, diff_fc));

        raw.push_back(actual);
        const double w_new = diff_tail_value(raw, d);
        w.push_back(w_new);
        eps.push_back(w_new - diff_fc);
    }
    return out;
}

std::vector<double> in_sample_predictions(const ArimaModel& model, const TimeSeries& train) {
    const int d = model.order.d;
    const std::size_t p = model.phi.size();
    const std::size_t q = model.theta.size();
    const std::vector<double> w = difference(train, d).values;
    if (w.size() <= p) {
        throw std::invalid_argument("in_sample_predictions: series too short for the model");
    }
    const std::vector<double> eps =
        css_objective(model.phi, model.theta, model.intercept, w).residuals;

    std::vector<double> out;
    out.reserve(w.size() - p);
    for (std::size_t t = p; t < w.size(); ++t) {
        double pred = model.intercept;
        for (std::size_t i = 0; i < p; ++i) pred += model.phi[i] * w[t - 1 - i];
        for (std::size_t j = 0; j < q; ++j) {
            if (t >= j + 1) pred -= model.theta[j] * eps[t - 1 - j];
        }
        if (d == 0) {
            out.push_back(pred);
        } else {
            // Rebuild the raw-scale prediction from the d values preceding the target.
            const std::size_t raw_target = t + static_cast<std::size_t>(d);
            std::vector<double> recent(train.values.begin() +
                                           static_cast<std::ptrdiff_t>(raw_target - d),
                                       train.values.begin() +
                                           static_cast<std::ptrdiff_t>(raw_target));
            out.push_back(extend_integrate(recent, d, pred));
        }
    }
    return out;
}

}  // namespace tsh
