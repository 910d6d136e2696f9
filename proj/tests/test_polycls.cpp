#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <set>
#include <vector>

#include "tsh/polycls.hpp"
#include "tsh/series.hpp"

using namespace tsh;

namespace {

unsigned long long binomial(int n, int k) {
    unsigned long long acc = 1;
    for (int i = 1; i <= k; ++i) acc = acc * static_cast<unsigned long long>(n - k + i) /
                                       static_cast<unsigned long long>(i);
    return acc;
}

std::vector<double> arithmetic_progression(double start, double step, std::size_t n) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = start + step * static_cast<double>(i);
    return v;
}

}  // namespace

TEST_CASE("basis for L=2, K=2 lists the canonical six monomials") {
    const MonomialBasis basis = build_basis(2, 2);
    REQUIRE(basis.size() == 6);
    const std::vector<std::vector<int>> expect = {{0, 0}, {1, 0}, {0, 1},
                                                  {2, 0}, {1, 1}, {0, 2}};
    CHECK(basis.exponents == expect);
}

TEST_CASE("basis sizes and shapes") {
    {
        const MonomialBasis b = build_basis(1, 1);
        REQUIRE(b.size() == 2);
        CHECK(b.exponents[0] == std::vector<int>{0});
        CHECK(b.exponents[1] == std::vector<int>{1});
    }
    CHECK(build_basis(3, 2).size() == 10);  // C(5,2)

    for (int window_len = 1; window_len <= 12; ++window_len) {
        for (int degree = 1; degree <= 3; ++degree) {
            const MonomialBasis b = build_basis(window_len, degree);
            CHECK(b.size() == binomial(window_len + degree, degree));

            // All tuples distinct, first is the constant term, degrees ascend,
            // ties ordered lexicographically descending.
            std::set<std::vector<int>> seen(b.exponents.begin(), b.exponents.end());
            CHECK(seen.size() == b.size());
            CHECK(b.exponents.front() == std::vector<int>(static_cast<std::size_t>(window_len), 0));
            int prev_total = -1;
            for (std::size_t i = 0; i < b.size(); ++i) {
                int total = 0;
                for (int e : b.exponents[i]) {
                    CHECK(e >= 0);
                    total += e;
                }
                CHECK(total <= degree);
                CHECK(total >= prev_total - degree);  // never drops below a started block
                if (i > 0) {
                    int prev = 0;
                    for (int e : b.exponents[i - 1]) prev += e;
                    if (prev == total) CHECK(b.exponents[i - 1] > b.exponents[i]);
                    else CHECK(prev < total);
                }
                prev_total = total;
            }
        }
    }
}

TEST_CASE("build_basis rejects out-of-range degrees") {
    CHECK_THROWS_AS(build_basis(2, 0), std::invalid_argument);
    CHECK_THROWS_AS(build_basis(2, 4), std::invalid_argument);
    CHECK_THROWS_AS(build_basis(0, 1), std::invalid_argument);
}

TEST_CASE("expand worked examples") {
    const MonomialBasis basis = build_basis(2, 2);
    CHECK(expand({2, 3}, basis) == std::vector<double>{1, 2, 3, 4, 6, 9});
    CHECK(expand({0, 0}, basis) == std::vector<double>{1, 0, 0, 0, 0, 0});
    CHECK(expand({1, 1}, basis) == std::vector<double>(6, 1.0));
    CHECK_THROWS_AS(expand({1, 2, 3}, basis), std::invalid_argument);
}

TEST_CASE("expansion scales each monomial by its total degree") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> dist(0.5, 2.0);
    const MonomialBasis basis = build_basis(3, 3);
    for (int rep = 0; rep < 10; ++rep) {
        const std::vector<double> y{dist(rng), dist(rng), dist(rng)};
        const double s = dist(rng);
        std::vector<double> scaled = y;
        for (double& v : scaled) v *= s;
        const auto base = expand(y, basis);
        const auto lifted = expand(scaled, basis);
        for (std::size_t j = 0; j < basis.size(); ++j) {
            int total = 0;
            for (int e : basis.exponents[j]) total += e;
            CHECK(lifted[j] == doctest::Approx(std::pow(s, total) * base[j]).epsilon(1e-12));
        }
    }
}

TEST_CASE("fit_pc reproduces an arithmetic progression exactly") {
    const TimeSeries train(arithmetic_progression(10, 3, 7));  // 10,13,...,28
    const PolyModel model = fit_pc(train, 2, 1);
    CHECK(model.train_sse <= 1e-12);
    CHECK(forecast_pc(model, {25, 28}) == doctest::Approx(31).epsilon(1e-6));
}

TEST_CASE("fit_pc handles a constant series through the ridge path") {
    const TimeSeries train(std::vector<double>(20, 5.0));
    const PolyModel model = fit_pc(train, 3, 1);
    CHECK(model.train_sse <= 1e-9);
}

TEST_CASE("fit_pc never loses to the intercept-only predictor") {
    std::mt19937 rng(44);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> v(60);
    for (double& x : v) x = gauss(rng);
    const TimeSeries train(v);
    const PolyModel model = fit_pc(train, 2, 3);

    const WindowMatrix wm = build_windows(train, 2);
    const double target_mean = mean_of(wm.targets);
    double const_sse = 0.0;
    double zero_sse = 0.0;
    for (double t : wm.targets) {
        const_sse += (t - target_mean) * (t - target_mean);
        zero_sse += t * t;
    }
    CHECK(model.train_sse <= const_sse + 1e-9);
    CHECK(model.train_sse <= zero_sse + 1e-9);
}

TEST_CASE("fit_pc names the required length") {
    const TimeSeries tiny({1, 2, 3, 4});
    CHECK_THROWS_WITH_AS(fit_pc(tiny, 2, 1), doctest::Contains("at least 6"),
                         std::invalid_argument);
}

TEST_CASE("noise-free linear recurrences are captured exactly at degree 1") {
    // A sinusoid obeys y_t = 2cos(w) y_{t-1} - y_{t-2}.
    std::vector<double> v(100);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::sin(0.7 * static_cast<double>(i));
    const TimeSeries train(v);
    for (int window_len : {2, 3}) {
        const PolyModel model = fit_pc(train, window_len, 1);
        const WindowMatrix wm = build_windows(train, window_len);
        double target_norm2 = 0.0;
        for (double t : wm.targets) target_norm2 += t * t;
        CHECK(model.train_sse <= 1e-8 * target_norm2);
    }
}

TEST_CASE("fit_pc is bitwise deterministic") {
    std::mt19937 rng(123);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> v(80);
    for (double& x : v) x = gauss(rng);
    const TimeSeries train(v);
    const PolyModel a = fit_pc(train, 3, 2);
    const PolyModel b = fit_pc(train, 3, 2);
    CHECK(a.weights == b.weights);
    CHECK(a.train_sse == b.train_sse);
}

TEST_CASE("forecast_pc worked examples") {
    PolyModel constant;
    constant.basis = build_basis(2, 2);
    constant.weights = {4.5, 0, 0, 0, 0, 0};
    CHECK(forecast_pc(constant, {100, -3}) == doctest::Approx(4.5));

    PolyModel one_hot;
    one_hot.basis = build_basis(2, 2);
    one_hot.weights = {0, 0, 0, 0, 1, 0};  // picks out t1*t2
    CHECK(forecast_pc(one_hot, {2, 3}) == doctest::Approx(6));

    CHECK_THROWS_AS(forecast_pc(one_hot, {1, 2, 3}), std::invalid_argument);
}

TEST_CASE("rolling_forecast_pc basics") {
    PolyModel constant;
    constant.basis = build_basis(2, 1);
    constant.weights = {7, 0, 0};
    const TimeSeries train({1, 2, 3});
    const TimeSeries test({4, 5, 6, 7});
    const auto fc = rolling_forecast_pc(constant, train, test);
    CHECK(fc == std::vector<double>(4, 7.0));

    // Progression model keeps tracking the progression through the test set.
    const TimeSeries ptrain(arithmetic_progression(10, 3, 7));
    const PolyModel pmodel = fit_pc(ptrain, 2, 1);
    const TimeSeries ptest(arithmetic_progression(31, 3, 5));
    const auto pfc = rolling_forecast_pc(pmodel, ptrain, ptest);
    REQUIRE(pfc.size() == ptest.length());
    for (std::size_t i = 0; i < pfc.size(); ++i) {
        CHECK(pfc[i] == doctest::Approx(ptest.values[i]).epsilon(1e-6));
    }
}

TEST_CASE("select_pc_config prefers degree 1 on linear-recurrence data") {
    std::mt19937 rng(2718);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> v(400);
    double y = 0.0;
    for (double& x : v) {
        y = 0.8 * y + gauss(rng);
        x = y;
    }
    const PcConfig cfg = select_pc_config(TimeSeries(v), {1, 2}, {1, 2});
    CHECK(cfg.degree == 1);
}

TEST_CASE("select_pc_config prefers degree 2 on quadratic-map data") {
    // Orbits of y -> 0.5 y^2 restarted just below the repelling fixed point;
    // the one-step map is exactly quadratic in the previous value.
    std::mt19937 rng(555);
    std::uniform_real_distribution<double> jitter(0.001, 0.002);
    std::vector<double> v;
    v.reserve(600);
    double y = 2.0 - jitter(rng);
    while (v.size() < 600) {
        v.push_back(y);
        y = 0.5 * y * y;
        if (y < 0.05) y = 2.0 - jitter(rng);
    }
    const PcConfig cfg = select_pc_config(TimeSeries(v), {1}, {1, 2});
    CHECK(cfg.degree == 2);
}

TEST_CASE("select_pc_config ties break toward smaller degree then window") {
    // All-zero data: every candidate's ridge solution is exactly zero, so
    // every validation RMSE is exactly 0 and only the tie-break decides.
    // Grids are listed largest-first so iteration order alone cannot win.
    const TimeSeries zeros(std::vector<double>(200, 0.0));
    const PcConfig cfg = select_pc_config(zeros, {3, 2}, {2, 1});
    CHECK(cfg.degree == 1);
    CHECK(cfg.window_len == 2);
}

TEST_CASE("select_pc_config reports infeasible grids") {
    std::vector<double> v(20, 0.0);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<double>(i % 5);
    CHECK_THROWS_AS(select_pc_config(TimeSeries(v), {12}, {3}), std::invalid_argument);
}

TEST_CASE("scaled fits forecast on the raw scale") {
    const TimeSeries train(arithmetic_progression(1000, 10, 40));
    const PolyModel scaled = fit_pc(train, 2, 1, true);
    CHECK(scaled.scaled);
    const double fc = forecast_pc(scaled, {train.values[38], train.values[39]});
    CHECK(fc == doctest::Approx(train.values[39] + 10).epsilon(1e-6));
}
