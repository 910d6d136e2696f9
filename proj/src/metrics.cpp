#include "tsh/metrics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "tsh/errors.hpp"

namespace tsh {

namespace {

void check_pair(const std::vector<double>& obs, const std::vector<double>& pred,
                const char* op) {
    if (obs.empty()) {
        throw std::invalid_argument(std::string(op) + ": empty sequences");
    }
    if (obs.size() != pred.size()) {
        throw std::invalid_argument(std::string(op) + ": observed length " +
                                    std::to_string(obs.size()) + " != predicted length " +
                                    std::to_string(pred.size()));
    }
}

}  // namespace

double mae(const std::vector<double>& obs, const std::vector<double>& pred) {
    check_pair(obs, pred, "mae");
    double acc = 0.0;
    for (std::size_t i = 0; i < obs.size(); ++i) acc += std::fabs(obs[i] - pred[i]);
    return acc / static_cast<double>(obs.size());
}

double rmse(const std::vector<double>& obs, const std::vector<double>& pred) {
    check_pair(obs, pred, "rmse");
    double acc = 0.0;
    for (std::size_t i = 0; i < obs.size(); ++i) {
        const double e = obs[i] - pred[i];
        acc += e * e;
    }
    return std::sqrt(acc / static_cast<double>(obs.size()));
}

double cv_rmse(const std::vector<double>& obs, const std::vector<double>& pred) {
    check_pair(obs, pred, "cv_rmse");
    double mean = 0.0;
    for (double v : obs) mean += v;
    mean /= static_cast<double>(obs.size());
    if (mean == 0.0) {
        throw DegenerateInput("cv_rmse: observed mean is zero");
    }
    return 100.0 * rmse(obs, pred) / mean;
}

MetricsReport evaluate(const std::vector<double>& obs, const std::vector<double>& pred,
                       double wall_seconds) {
    MetricsReport report;
    report.mae = mae(obs, pred);
    report.rmse = rmse(obs, pred);
    report.cv_rmse_percent = cv_rmse(obs, pred);
    report.n = obs.size();
    report.wall_seconds = wall_seconds;
    return report;
}

}  // namespace tsh
