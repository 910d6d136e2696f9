#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "tsh/errors.hpp"
#include "tsh/metrics.hpp"

using namespace tsh;

TEST_CASE("mae hand values") {
    CHECK(mae({1, 2, 3}, {1, 2, 3}) == 0.0);
    CHECK(mae({2, 4, 6}, {1, 4, 8}) == doctest::Approx(1.0));
    CHECK(mae({0}, {-3}) == doctest::Approx(3.0));
}

TEST_CASE("rmse hand values") {
    CHECK(rmse({5, 6}, {5, 6}) == 0.0);
    CHECK(rmse({0, 0}, {3, 4}) == doctest::Approx(std::sqrt(12.5)));
    CHECK(rmse({2, 4, 6}, {1, 4, 8}) == doctest::Approx(std::sqrt(5.0 / 3.0)));
}

TEST_CASE("cv_rmse hand values") {
    CHECK(cv_rmse({2, 4, 6}, {1, 4, 8}) == doctest::Approx(100.0 * std::sqrt(5.0 / 3.0) / 4.0));
    CHECK(cv_rmse({2, 4, 6}, {2, 4, 6}) == 0.0);
    // rmse == mean when predictions are off by exactly the constant level
    CHECK(cv_rmse({3, 3, 3}, {6, 6, 6}) == doctest::Approx(100.0));
}

TEST_CASE("error paths") {
    CHECK_THROWS_AS(mae({}, {}), std::invalid_argument);
    CHECK_THROWS_AS(rmse({1, 2}, {1}), std::invalid_argument);
    CHECK_THROWS_AS(cv_rmse({1, -1}, {0, 0}), DegenerateInput);  // zero mean
}

TEST_CASE("evaluate bundles everything") {
    const MetricsReport r = evaluate({2, 4, 6}, {1, 4, 8}, 0.25);
    CHECK(r.mae == doctest::Approx(1.0));
    CHECK(r.rmse == doctest::Approx(1.290994).epsilon(1e-6));
    CHECK(r.cv_rmse_percent == doctest::Approx(32.2749).epsilon(1e-4));
    CHECK(r.n == 3);
    CHECK(r.wall_seconds == 0.25);

    const MetricsReport zero = evaluate({1, 2}, {1, 2}, 0.0);
    CHECK(zero.mae == 0.0);
    CHECK(zero.rmse == 0.0);
    CHECK(zero.cv_rmse_percent == 0.0);
}

TEST_CASE("mae never exceeds rmse") {
    std::mt19937 rng(2025);
    std::uniform_real_distribution<double> dist(-100.0, 100.0);
    for (int rep = 0; rep < 200; ++rep) {
        const std::size_t n = 1 + rng() % 50;
        std::vector<double> obs(n), pred(n);
        for (std::size_t i = 0; i < n; ++i) {
            obs[i] = dist(rng);
            pred[i] = dist(rng);
        }
        CHECK(mae(obs, pred) <= rmse(obs, pred) + 1e-12);
    }
}

TEST_CASE("translation leaves mae and rmse unchanged, scaling is linear") {
    std::mt19937 rng(6);
    std::uniform_real_distribution<double> dist(-10.0, 10.0);
    for (int rep = 0; rep < 50; ++rep) {
        const std::size_t n = 2 + rng() % 20;
        std::vector<double> obs(n), pred(n);
        for (std::size_t i = 0; i < n; ++i) {
            obs[i] = dist(rng);
            pred[i] = dist(rng);
        }
        const double shift = dist(rng);
        const double scale = 0.5 + std::fabs(dist(rng));

        std::vector<double> obs_shift = obs, pred_shift = pred;
        std::vector<double> obs_scale = obs, pred_scale = pred;
        for (std::size_t i = 0; i < n; ++i) {
            obs_shift[i] += shift;
            pred_shift[i] += shift;
            obs_scale[i] *= scale;
            pred_scale[i] *= scale;
        }
        CHECK(mae(obs_shift, pred_shift) == doctest::Approx(mae(obs, pred)));
        CHECK(rmse(obs_shift, pred_shift) == doctest::Approx(rmse(obs, pred)));
        CHECK(mae(obs_scale, pred_scale) == doctest::Approx(scale * mae(obs, pred)));
        CHECK(rmse(obs_scale, pred_scale) == doctest::Approx(scale * rmse(obs, pred)));

        double obs_mean = 0.0;
        for (double v : obs) obs_mean += v;
        if (std::fabs(obs_mean) > 1e-9) {
            CHECK(cv_rmse(obs_scale, pred_scale) == doctest::Approx(cv_rmse(obs, pred)));
        }
    }
}
