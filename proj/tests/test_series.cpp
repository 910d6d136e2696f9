#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "tsh/errors.hpp"
#include "tsh/series.hpp"

using namespace tsh;

namespace {

std::vector<double> random_series(std::mt19937& rng, std::size_t n) {
    std::uniform_real_distribution<double> dist(-50.0, 50.0);
    std::vector<double> v(n);
    for (double& x : v) x = dist(rng);
    return v;
}

bool close_rel(double a, double b, double tol = 1e-9) {
    return std::fabs(a - b) <= tol * std::max({1.0, std::fabs(a), std::fabs(b)});
}

}  // namespace

TEST_CASE("TimeSeries validates its invariants") {
    CHECK_THROWS_AS(TimeSeries(std::vector<double>{}), std::invalid_argument);
    CHECK_THROWS_AS(TimeSeries({1.0, std::nan("")}), std::invalid_argument);
    CHECK_THROWS_AS(TimeSeries({1.0, 2.0}, "x", {"a"}), std::invalid_argument);
    const TimeSeries ok({1.0, 2.0}, "x", {"a", "b"});
    CHECK(ok.length() == 2);
}

TEST_CASE("difference: first difference of cumulative sums") {
    const DifferencedSeries ds = difference(TimeSeries({1, 3, 6, 10}), 1);
    CHECK(ds.values == std::vector<double>{2, 3, 4});
    CHECK(ds.heads == std::vector<double>{1});
    CHECK(ds.source_len == 4);
}

TEST_CASE("difference: order zero copies") {
    const DifferencedSeries ds = difference(TimeSeries({5, 5, 5}), 0);
    CHECK(ds.values == std::vector<double>{5, 5, 5});
    CHECK(ds.heads.empty());
}

TEST_CASE("difference: second difference of squares") {
    const DifferencedSeries ds = difference(TimeSeries({1, 4, 9, 16, 25}), 2);
    CHECK(ds.values == std::vector<double>{2, 2, 2});
    CHECK(ds.heads == std::vector<double>{1, 3});
}

TEST_CASE("difference: series must be longer than the order") {
    CHECK_THROWS_WITH_AS(difference(TimeSeries({1, 2}), 2),
                         doctest::Contains("at least 3"), std::invalid_argument);
}

TEST_CASE("integrate inverts the worked examples") {
    DifferencedSeries ds;
    ds.values = {2, 3, 4};
    ds.heads = {1};
    ds.order = 1;
    ds.source_len = 4;
    CHECK(integrate(ds).values == std::vector<double>{1, 3, 6, 10});

    DifferencedSeries ident;
    ident.values = {7};
    ident.order = 0;
    ident.source_len = 1;
    CHECK(integrate(ident).values == std::vector<double>{7});

    DifferencedSeries d2;
    d2.values = {2, 2, 2};
    d2.heads = {1, 3};
    d2.order = 2;
    d2.source_len = 5;
    CHECK(integrate(d2).values == std::vector<double>{1, 4, 9, 16, 25});
}

TEST_CASE("integrate rejects a heads/order mismatch") {
    DifferencedSeries ds;
    ds.values = {2, 3};
    ds.heads = {1, 9};  // claims order 1 but carries two heads
    ds.order = 1;
    ds.source_len = 3;
    CHECK_THROWS_AS(integrate(ds), CorruptStructure);
}

TEST_CASE("difference/integrate round trip on random series") {
    std::mt19937 rng(2024);
    for (int rep = 0; rep < 50; ++rep) {
        const std::size_t n = 50 + rng() % 451;
        const TimeSeries s(random_series(rng, n));
        for (int d = 0; d <= 2; ++d) {
            const TimeSeries back = integrate(difference(s, d));
            REQUIRE(back.length() == s.length());
            for (std::size_t i = 0; i < n; ++i) {
                CHECK(close_rel(back.values[i], s.values[i]));
            }
        }
    }
}

TEST_CASE("extend_integrate hand cases") {
    CHECK(extend_integrate({10}, 1, 2.5) == doctest::Approx(12.5));
    CHECK(extend_integrate({}, 0, 3.3) == doctest::Approx(3.3));
    CHECK(extend_integrate({16, 25}, 2, 2.0) == doctest::Approx(36.0));
    CHECK_THROWS_AS(extend_integrate({5}, 2, 1.0), std::invalid_argument);
}

TEST_CASE("extend_integrate agrees with appending and integrating") {
    std::mt19937 rng(99);
    for (int rep = 0; rep < 20; ++rep) {
        const std::size_t n = 30 + rng() % 100;
        std::vector<double> vals = random_series(rng, n);
        const double next_raw = random_series(rng, 1)[0];
        for (int d = 0; d <= 2; ++d) {
            std::vector<double> extended = vals;
            extended.push_back(next_raw);
            const DifferencedSeries full = difference(TimeSeries(extended), d);
            // The appended point's differenced value, fed back through
            // extend_integrate, must reproduce the raw point.
            const double diff_value = full.values.back();
            const double rebuilt = extend_integrate(vals, d, diff_value);
            CHECK(close_rel(rebuilt, next_raw));
        }
    }
}

TEST_CASE("train_test_split matches the published dataset sizes") {
    std::mt19937 rng(7);
    {
        auto [train, test] = train_test_split(TimeSeries(random_series(rng, 1575)), 0.8);
        CHECK(train.length() == 1260);
        CHECK(test.length() == 315);
    }
    {
        auto [train, test] = train_test_split(TimeSeries(random_series(rng, 476)), 0.8);
        CHECK(train.length() == 380);
        CHECK(test.length() == 96);
    }
    {
        auto [train, test] = train_test_split(TimeSeries(random_series(rng, 10)), 0.5);
        CHECK(train.length() == 5);
        CHECK(test.length() == 5);
    }
}

TEST_CASE("train_test_split keeps order and rejects bad fractions") {
    const TimeSeries s({1, 2, 3, 4, 5, 6, 7, 8, 9, 10});
    auto [train, test] = train_test_split(s, 0.8);
    CHECK(train.values == std::vector<double>{1, 2, 3, 4, 5, 6, 7, 8});
    CHECK(test.values == std::vector<double>{9, 10});
    CHECK(train.length() + test.length() == s.length());

    CHECK_THROWS_AS(train_test_split(s, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(train_test_split(s, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(train_test_split(s, -0.2), std::invalid_argument);
    // floor(0.05 * 10) = 0: nothing left to train on
    CHECK_THROWS_AS(train_test_split(s, 0.05), std::invalid_argument);

    // Determinism: same input, same split.
    auto [t2, e2] = train_test_split(s, 0.8);
    CHECK(t2.values == train.values);
    CHECK(e2.values == test.values);
}

TEST_CASE("build_windows tiny cases") {
    {
        const WindowMatrix wm = build_windows(TimeSeries({1, 2, 3, 4}), 2);
        REQUIRE(wm.rows.size() == 2);
        CHECK(wm.rows[0] == std::vector<double>{1, 2});
        CHECK(wm.rows[1] == std::vector<double>{2, 3});
        CHECK(wm.targets == std::vector<double>{3, 4});
    }
    {
        const WindowMatrix wm = build_windows(TimeSeries({1, 2, 3}), 1);
        REQUIRE(wm.rows.size() == 2);
        CHECK(wm.rows[0] == std::vector<double>{1});
        CHECK(wm.rows[1] == std::vector<double>{2});
        CHECK(wm.targets == std::vector<double>{2, 3});
    }
    {
        const WindowMatrix wm = build_windows(TimeSeries({5, 7, 9, 11, 13}), 3);
        REQUIRE(wm.rows.size() == 2);
        CHECK(wm.rows[0] == std::vector<double>{5, 7, 9});
        CHECK(wm.rows[1] == std::vector<double>{7, 9, 11});
        CHECK(wm.targets == std::vector<double>{11, 13});
    }
}

TEST_CASE("build_windows names the required minimum length") {
    CHECK_THROWS_WITH_AS(build_windows(TimeSeries({1, 2, 3}), 3),
                         doctest::Contains("at least 4"), std::invalid_argument);
}

TEST_CASE("window rows rebuild the original slices") {
    std::mt19937 rng(11);
    const TimeSeries s(random_series(rng, 120));
    for (int window_len : {1, 4, 9}) {
        const WindowMatrix wm = build_windows(s, window_len);
        REQUIRE(wm.rows.size() == s.length() - static_cast<std::size_t>(window_len));
        for (std::size_t i = 0; i < wm.rows.size(); ++i) {
            std::vector<double> joined = wm.rows[i];
            joined.push_back(wm.targets[i]);
            const std::vector<double> expect(
                s.values.begin() + static_cast<std::ptrdiff_t>(i),
                s.values.begin() + static_cast<std::ptrdiff_t>(i + window_len + 1));
            CHECK(joined == expect);
        }
    }
}

TEST_CASE("sample_autocorrelation basics") {
    std::mt19937 rng(5);
    const TimeSeries s(random_series(rng, 80));
    CHECK(sample_autocorrelation(s, 0)[0] == 1.0);

    const TimeSeries alternating({1, -1, 1, -1, 1, -1, 1, -1});
    CHECK(sample_autocorrelation(alternating, 1)[1] == doctest::Approx(-0.875));
}

TEST_CASE("sample_autocorrelation of white noise is near zero at lag 1") {
    std::mt19937 rng(12345);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> v(10000);
    for (double& x : v) x = gauss(rng);
    const auto r = sample_autocorrelation(TimeSeries(v), 1);
    CHECK(std::fabs(r[1]) < 0.05);
}

TEST_CASE("sample_autocorrelation rejects constant and too-short input") {
    CHECK_THROWS_AS(sample_autocorrelation(TimeSeries({3, 3, 3, 3}), 1), DegenerateInput);
    CHECK_THROWS_AS(sample_autocorrelation(TimeSeries({1, 2}), 2), std::invalid_argument);
}
