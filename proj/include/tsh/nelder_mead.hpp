#ifndef TSH_NELDER_MEAD_HPP
#define TSH_NELDER_MEAD_HPP

#include <algorithm>
#include <cstddef>
#include <functional>
#include <numeric>
#include <vector>

namespace tsh {

struct NelderMeadResult {
    std::vector<double> x;
    double value = 0.0;
    bool converged = false;
    int iterations = 0;
};

/// Classic downhill simplex with fixed coefficients (reflect 1, expand 2,
/// contract 0.5, shrink 0.5). Fully deterministic: the start simplex is
/// x0 plus `step` along each axis and ties sort by vertex index. Stops when
/// the objective spread falls below `spread_tol` or after `max_iter_per_dim`
/// times the dimension.
inline NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                                    std::vector<double> x0, double step = 0.1,
                                    double spread_tol = 1e-10, int max_iter_per_dim = 200) {
    const std::size_t dim = x0.size();
    NelderMeadResult result;
    if (dim == 0) {
        result.x = std::move(x0);
        result.value = f(result.x);
        result.converged = true;
        return result;
    }

    std::vector<std::vector<double>> simplex(dim + 1, x0);
    for (std::size_t i = 0; i < dim; ++i) simplex[i + 1][i] += step;
    std::vector<double> fx(dim + 1);
    for (std::size_t i = 0; i <= dim; ++i) fx[i] = f(simplex[i]);

    std::vector<std::size_t> order(dim + 1);
    const int max_iter = max_iter_per_dim * static_cast<int>(dim);

    auto sort_order = [&] {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return fx[a] < fx[b]; });
    };

    int iter = 0;
    for (; iter < max_iter; ++iter) {
        sort_order();
        const std::size_t best = order.front();
        const std::size_t worst = order.back();
        const std::size_t second_worst = order[dim - 1];

        if (fx[worst] - fx[best] < spread_tol) {
            result.converged = true;
            break;
        }

        // Centroid of all vertices except the worst.
        std::vector<double> centroid(dim, 0.0);
        for (std::size_t i = 0; i <= dim; ++i) {
            if (i == worst) continue;
            for (std::size_t j = 0; j < dim; ++j) centroid[j] += simplex[i][j];
        }
        for (double& c : centroid) c /= static_cast<double>(dim);

        auto blend = [&](double coeff) {
            std::vector<double> p(dim);
            for (std::size_t j = 0; j < dim; ++j) {
                p[j] = centroid[j] + coeff * (centroid[j] - simplex[worst][j]);
            }
            return p;
        };

        std::vector<double> reflected = blend(1.0);
        const double f_reflected = f(reflected);

        if (f_reflected < fx[best]) {
            std::vector<double> expanded = blend(2.0);
            const double f_expanded = f(expanded);
            if (f_expanded < f_reflected) {
                simplex[worst] = std::move(expanded);
                fx[worst] = f_expanded;
            } else {
                simplex[worst] = std::move(reflected);
                fx[worst] = f_reflected;
            }
        } else if (f_reflected < fx[second_worst]) {
            simplex[worst] = std::move(reflected);
            fx[worst] = f_reflected;
        } else {
            const bool outside = f_reflected < fx[worst];
            std::vector<double> contracted = blend(outside ? 0.5 : -0.5);
            const double f_contracted = f(contracted);
            if (f_contracted < std::min(f_reflected, fx[worst])) {
                simplex[worst] = std::move(contracted);
                fx[worst] = f_contracted;
            } else {
                // Shrink everything toward the best vertex.
                for (std::size_t i = 0; i <= dim; ++i) {
                    if (i == best) continue;
                    for (std::size_t j = 0; j < dim; ++j) {
                        simplex[i][j] = simplex[best][j] + 0.5 * (simplex[i][j] - simplex[best][j]);
                    }
                    fx[i] = f(simplex[i]);
                }
            }
        }
    }

    sort_order();
    result.x = simplex[order.front()];
    result.value = fx[order.front()];
    result.iterations = iter;
    return result;
}

}  // namespace tsh

#endif
