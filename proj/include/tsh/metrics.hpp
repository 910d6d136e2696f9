#ifndef TSH_METRICS_HPP
#define TSH_METRICS_HPP

#include <cstddef>
#include <vector>

namespace tsh {

struct MetricsReport {
    double mae = 0.0;
    double rmse = 0.0;
    double cv_rmse_percent = 0.0;  // 100 * rmse / mean(observed)
    std::size_t n = 0;
    double wall_seconds = 0.0;
};

double mae(const std::vector<double>& obs, const std::vector<double>& pred);
double rmse(const std::vector<double>& obs, const std::vector<double>& pred);

/// Percent form; throws DegenerateInput when the observed mean is zero.
double cv_rmse(const std::vector<double>& obs, const std::vector<double>& pred);

MetricsReport evaluate(const std::vector<double>& obs, const std::vector<double>& pred,
                       double wall_seconds);

}  // namespace tsh

#endif
