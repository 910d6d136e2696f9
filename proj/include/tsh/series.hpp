#ifndef TSH_SERIES_HPP
#define TSH_SERIES_HPP

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace tsh {

/// Ordered univariate series of finite real observations. Labels, when
/// present, are opaque strings carried along for reporting only.
struct TimeSeries {
    std::vector<double> values;
    std::vector<std::string> labels;  // empty or same length as values
    std::string name;

    TimeSeries(std::vector<double> vals, std::string series_name = "",
               std::vector<std::string> time_labels = {});

    std::size_t length() const { return values.size(); }
};

/// Result of applying the first-difference operator `order` times.
/// `heads` keeps the first element of each intermediate pass so the
/// transform inverts exactly.
struct DifferencedSeries {
    std::vector<double> values;
    int order = 0;
    std::vector<double> heads;  // heads.size() == order
    std::size_t source_len = 0;
};

/// Overlapping lag windows: row i holds `window_len` consecutive values
/// and targets[i] is the observation immediately after that row.
struct WindowMatrix {
    std::vector<std::vector<double>> rows;
    std::vector<double> targets;
    int window_len = 0;
};

DifferencedSeries difference(const TimeSeries& s, int order);
TimeSeries integrate(const DifferencedSeries& ds);

/// Converts a one-step forecast made on the `order`-times-differenced scale
/// back to the raw scale. `recent_raw` must end with the most recent
/// observation and hold at least `order` values.
double extend_integrate(const std::vector<double>& recent_raw, int order,
                        double diff_forecast);

std::pair<TimeSeries, TimeSeries> train_test_split(const TimeSeries& s,
                                                   double train_fraction);

WindowMatrix build_windows(const TimeSeries& s, int window_len);

/// Biased autocorrelation estimates r_0..r_max_lag (r_0 == 1).
std::vector<double> sample_autocorrelation(const TimeSeries& s, int max_lag);

// Shared helpers used across the fitting code.
double mean_of(const std::vector<double>& v);
double stddev_of(const std::vector<double>& v);  // population (divide by n)

}  // namespace tsh

#endif
