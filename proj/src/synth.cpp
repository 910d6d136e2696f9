#include "tsh/synth.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace tsh {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// Box-Muller on raw engine draws; avoids std::normal_distribution so the
// stream is pinned down by the mt19937 spec alone.
class GaussianSource {
public:
    explicit GaussianSource(std::uint64_t seed)
        : engine_(static_cast<std::mt19937::result_type>(seed)) {}

    double next() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = uniform01();
        const double u2 = uniform01();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        have_spare_ = true;
        spare_ = radius * std::sin(kTwoPi * u2);
        return radius * std::cos(kTwoPi * u2);
    }

private:
    double uniform01() {
        // (0, 1): never returns 0, so log() stays finite.
        return (static_cast<double>(engine_()) + 0.5) / 4294967296.0;
    }

    std::mt19937 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace

TimeSeries synth_dataset(const std::string& kind, std::size_t n, std::uint64_t seed) {
    if (n < 50) {
        throw std::invalid_argument("synth_dataset: need n >= 50");
    }

    GaussianSource noise(seed);
    std::vector<double> values(n);

    if (kind == "ar1") {
        const double phi = 0.7;
        double y = 0.0;
        for (int burn = 0; burn < 100; ++burn) y = phi * y + noise.next();
        for (std::size_t i = 0; i < n; ++i) {
            y = phi * y + noise.next();
            values[i] = y;
        }
    } else if (kind == "trend-sine") {
        for (std::size_t i = 0; i < n; ++i) {
            const double t = static_cast<double>(i);
            values[i] = 0.05 * t + 2.0 * std::sin(kTwoPi * t / 12.0) + 0.5 * noise.next();
        }
    } else if (kind == "random-walk") {
        double y = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            y += noise.next();
            values[i] = y;
        }
    } else if (kind == "quadratic") {
        for (std::size_t i = 0; i < n; ++i) {
            const double t = static_cast<double>(i);
            values[i] = 0.01 * t * t + noise.next();
        }
    } else {
        throw std::invalid_argument("synth_dataset: unknown kind '" + kind +
                                    "' (expected ar1, trend-sine, random-walk or quadratic)");
    }

    return TimeSeries(std::move(values), kind);
}

}  // namespace tsh
