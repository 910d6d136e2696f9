#include "tsh/series.hpp"

#include <cmath>
#include <numeric>

#include "tsh/errors.hpp"

namespace tsh {

TimeSeries::TimeSeries(std::vector<double> vals, std::string series_name,
                       std::vector<std::string> time_labels)
    : values(std::move(vals)), labels(std::move(time_labels)), name(std::move(series_name)) {
    if (values.empty()) {
        throw std::invalid_argument("TimeSeries: needs at least one observation");
    }
    for (double v : values) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument("TimeSeries: all values must be finite");
        }
    }
    if (!labels.empty() && labels.size() != values.size()) {
        throw std::invalid_argument("TimeSeries: labels must match values in length");
    }
}

double mean_of(const std::vector<double>& v) {
    if (v.empty()) return 0.0;
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double stddev_of(const std::vector<double>& v) {
    if (v.size() < 2) return 0.0;
    const double m = mean_of(v);
    double acc = 0.0;
    for (double x : v) acc += (x - m) * (x - m);
    return std::sqrt(acc / static_cast<double>(v.size()));
}

DifferencedSeries difference(const TimeSeries& s, int order) {
    if (order < 0) {
        throw std::invalid_argument("difference: order must be >= 0");
    }
    if (s.length() <= static_cast<std::size_t>(order)) {
        throw std::invalid_argument("difference: series of length " +
                                    std::to_string(s.length()) + " needs at least " +
                                    std::to_string(order + 1) + " observations for order " +
                                    std::to_string(order));
    }

    DifferencedSeries out;
    out.order = order;
    out.source_len = s.length();
    out.values = s.values;
    out.heads.reserve(static_cast<std::size_t>(order));
    for (int pass = 0; pass < order; ++pass) {
        out.heads.push_back(out.values.front());
        std::vector<double> next(out.values.size() - 1);
        for (std::size_t i = 0; i + 1 < out.values.size(); ++i) {
            next[i] = out.values[i + 1] - out.values[i];
        }
        out.values = std::move(next);
    }
    return out;
}

TimeSeries integrate(const DifferencedSeries& ds) {
    if (ds.heads.size() != static_cast<std::size_t>(ds.order)) {
        throw CorruptStructure("integrate: heads count " + std::to_string(ds.heads.size()) +
                               " does not match order " + std::to_string(ds.order));
    }
    if (ds.values.size() + static_cast<std::size_t>(ds.order) != ds.source_len) {
        throw CorruptStructure("integrate: values length inconsistent with source_len");
    }

    std::vector<double> cur = ds.values;
    for (int pass = ds.order - 1; pass >= 0; --pass) {
        std::vector<double> next(cur.size() + 1);
        next[0] = ds.heads[static_cast<std::size_t>(pass)];
        for (std::size_t i = 0; i < cur.size(); ++i) {
            next[i + 1] = next[i] + cur[i];
        }
        cur = std::move(next);
    }
    return TimeSeries(std::move(cur));
}

double extend_integrate(const std::vector<double>& recent_raw, int order,
                        double diff_forecast) {
    if (order < 0) {
        throw std::invalid_argument("extend_integrate: order must be >= 0");
    }
    if (recent_raw.size() < static_cast<std::size_t>(order)) {
        throw std::invalid_argument("extend_integrate: need the last " + std::to_string(order) +
                                    " raw observations, got " +
                                    std::to_string(recent_raw.size()));
    }
    if (order == 0) return diff_forecast;

    // Trailing value of each difference level, from the last `order` raw points.
    std::vector<double> tail(recent_raw.end() - order, recent_raw.end());
    std::vector<double> level_last(static_cast<std::size_t>(order));
    level_last[0] = tail.back();
    for (int lvl = 1; lvl < order; ++lvl) {
        for (std::size_t i = 0; i + 1 < tail.size(); ++i) tail[i] = tail[i + 1] - tail[i];
        tail.pop_back();
        level_last[static_cast<std::size_t>(lvl)] = tail.back();
    }

    double fc = diff_forecast;
    for (int lvl = order - 1; lvl >= 0; --lvl) {
        fc += level_last[static_cast<std::size_t>(lvl)];
    }
    return fc;
}

std::pair<TimeSeries, TimeSeries> train_test_split(const TimeSeries& s,
                                                   double train_fraction) {
    if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
        throw std::invalid_argument("train_test_split: fraction must lie in (0, 1)");
    }
    const std::size_t n = s.length();
    const std::size_t n_train =
        static_cast<std::size_t>(std::floor(train_fraction * static_cast<double>(n)));
    if (n_train < 1 || n_train >= n) {
        throw std::invalid_argument("train_test_split: split leaves an empty side (n=" +
                                    std::to_string(n) + ", fraction=" +
                                    std::to_string(train_fraction) + ")");
    }

    auto slice_labels = [&](std::size_t from, std::size_t to) {
        if (s.labels.empty()) return std::vector<std::string>{};
        return std::vector<std::string>(s.labels.begin() + static_cast<std::ptrdiff_t>(from),
                                        s.labels.begin() + static_cast<std::ptrdiff_t>(to));
    };

    TimeSeries train(std::vector<double>(s.values.begin(),
                                         s.values.begin() + static_cast<std::ptrdiff_t>(n_train)),
                     s.name.empty() ? "train" : s.name + ".train", slice_labels(0, n_train));
    TimeSeries test(std::vector<double>(s.values.begin() + static_cast<std::ptrdiff_t>(n_train),
                                        s.values.end()),
                    s.name.empty() ? "test" : s.name + ".test", slice_labels(n_train, n));
    return {std::move(train), std::move(test)};
}

WindowMatrix build_windows(const TimeSeries& s, int window_len) {
    if (window_len < 1) {
        throw std::invalid_argument("build_windows: window length must be >= 1");
    }
    if (s.length() < static_cast<std::size_t>(window_len) + 1) {
        throw std::invalid_argument("build_windows: series of length " +
                                    std::to_string(s.length()) + " needs at least " +
                                    std::to_string(window_len + 1) +
                                    " observations for window length " +
                                    std::to_string(window_len));
    }

    const std::size_t n_rows = s.length() - static_cast<std::size_t>(window_len);
    WindowMatrix wm;
    wm.window_len = window_len;
    wm.rows.reserve(n_rows);
    wm.targets.reserve(n_rows);
    for (std::size_t i = 0; i < n_rows; ++i) {
        wm.rows.emplace_back(s.values.begin() + static_cast<std::ptrdiff_t>(i),
                             s.values.begin() + static_cast<std::ptrdiff_t>(i + window_len));
        wm.targets.push_back(s.values[i + static_cast<std::size_t>(window_len)]);
    }
    return wm;
}

std::vector<double> sample_autocorrelation(const TimeSeries& s, int max_lag) {
    if (max_lag < 0) {
        throw std::invalid_argument("sample_autocorrelation: max_lag must be >= 0");
    }
    if (s.length() <= static_cast<std::size_t>(max_lag)) {
        throw std::invalid_argument("sample_autocorrelation: series too short for lag " +
                                    std::to_string(max_lag));
    }

    const std::size_t n = s.length();
    const double m = mean_of(s.values);
    double denom = 0.0;
    for (double x : s.values) denom += (x - m) * (x - m);
    if (denom <= 0.0) {
        throw DegenerateInput("sample_autocorrelation: constant series has no autocorrelation");
    }

    std::vector<double> r(static_cast<std::size_t>(max_lag) + 1);
    r[0] = 1.0;
    for (int k = 1; k <= max_lag; ++k) {
        double acc = 0.0;
        for (std::size_t t = 0; t + static_cast<std::size_t>(k) < n; ++t) {
            acc += (s.values[t] - m) * (s.values[t + static_cast<std::size_t>(k)] - m);
        }
        r[static_cast<std::size_t>(k)] = acc / denom;
    }
    return r;
}

}  // namespace tsh
