#include "tsh/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tsh/errors.hpp"

namespace tsh {

namespace {

constexpr double kConditionLimit = 1e12;

double vector_norm(const std::vector<double>& v) {
    double acc = 0.0;
    for (double x : v) acc += x * x;
    return std::sqrt(acc);
}

void check_finite_vec(const std::vector<double>& v, const char* context) {
    for (double x : v) {
        if (!std::isfinite(x)) {
            throw std::invalid_argument(std::string(context) + ": non-finite entry");
        }
    }
}

std::vector<double> residual_vector(const DenseMatrix& m, const std::vector<double>& w,
                                    const std::vector<double>& t) {
    std::vector<double> r(t);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < m.cols(); ++j) acc += m.at(i, j) * w[j];
        r[i] -= acc;
    }
    return r;
}

// Ridge-regularized normal equations, used when QR reports rank trouble.
LeastSquaresResult ridge_solve(const DenseMatrix& m, const std::vector<double>& t,
                               double condition_estimate) {
    const std::size_t n = m.rows();
    const std::size_t p = m.cols();

    DenseMatrix ata(p, p);
    std::vector<double> atb(p, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < p; ++j) {
            const double mij = m.at(i, j);
            atb[j] += mij * t[i];
            for (std::size_t k = j; k < p; ++k) {
                ata.at(j, k) += mij * m.at(i, k);
            }
        }
    }
    for (std::size_t j = 0; j < p; ++j) {
        for (std::size_t k = 0; k < j; ++k) ata.at(j, k) = ata.at(k, j);
    }

    double trace = 0.0;
    for (std::size_t j = 0; j < p; ++j) trace += ata.at(j, j);
    double lambda = 1e-8 * trace / static_cast<double>(p);
    if (lambda <= 0.0) lambda = 1e-8;  // zero matrix: any finite shift works
    for (std::size_t j = 0; j < p; ++j) ata.at(j, j) += lambda;

    LeastSquaresResult res;
    res.weights = solve_linear_system(ata, atb);

    // Defect correction against the unshifted normal equations (iterated
    // Tikhonov). Shrinks the regularization bias from O(lambda) to
    // O(lambda^4), so consistent rank-deficient systems solve to machine
    // precision while the shifted solve stays bounded.
    for (int pass = 0; pass < 3; ++pass) {
        std::vector<double> defect(p, 0.0);
        const std::vector<double> r = residual_vector(m, res.weights, t);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < p; ++j) defect[j] += m.at(i, j) * r[i];
        }
        const std::vector<double> delta = solve_linear_system(ata, defect);
        for (std::size_t j = 0; j < p; ++j) res.weights[j] += delta[j];
    }

    res.report.method = SolveMethod::RidgeFallback;
    res.report.ridge_lambda = lambda;
    res.report.condition_estimate = condition_estimate;
    res.report.residual_norm = vector_norm(residual_vector(m, res.weights, t));
    return res;
}

}  // namespace

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

void DenseMatrix::check_finite(const std::string& context) const {
    for (double x : data_) {
        if (!std::isfinite(x)) {
            throw std::invalid_argument(context + ": non-finite matrix entry");
        }
    }
}

LeastSquaresResult solve_least_squares(const DenseMatrix& m, const std::vector<double>& t) {
    const std::size_t n = m.rows();
    const std::size_t p = m.cols();
    if (n == 0 || p == 0) {
        throw std::invalid_argument("solve_least_squares: empty system");
    }
    if (t.size() != n) {
        throw std::invalid_argument("solve_least_squares: rhs length " + std::to_string(t.size()) +
                                    " does not match row count " + std::to_string(n));
    }
    m.check_finite("solve_least_squares");
    check_finite_vec(t, "solve_least_squares");

    if (n < p) {
        // Underdetermined; normal equations are singular by construction.
        return ridge_solve(m, t, std::numeric_limits<double>::infinity());
    }

    // Householder QR, reflections applied to a working copy and the rhs.
    DenseMatrix a = m;
    std::vector<double> qtb = t;
    std::vector<double> v(n);

    for (std::size_t k = 0; k < p; ++k) {
        double norm = 0.0;
        for (std::size_t i = k; i < n; ++i) norm += a.at(i, k) * a.at(i, k);
        norm = std::sqrt(norm);
        if (norm == 0.0) continue;  // column already zero below the diagonal

        const double alpha = (a.at(k, k) > 0.0) ? -norm : norm;
        double vnorm2 = 0.0;
        for (std::size_t i = k; i < n; ++i) {
            v[i] = a.at(i, k);
            if (i == k) v[i] -= alpha;
            vnorm2 += v[i] * v[i];
        }
        if (vnorm2 == 0.0) continue;

        for (std::size_t j = k; j < p; ++j) {
            double dot = 0.0;
            for (std::size_t i = k; i < n; ++i) dot += v[i] * a.at(i, j);
            const double scale = 2.0 * dot / vnorm2;
            for (std::size_t i = k; i < n; ++i) a.at(i, j) -= scale * v[i];
        }
        double dot = 0.0;
        for (std::size_t i = k; i < n; ++i) dot += v[i] * qtb[i];
        const double scale = 2.0 * dot / vnorm2;
        for (std::size_t i = k; i < n; ++i) qtb[i] -= scale * v[i];
    }

    double diag_max = 0.0;
    double diag_min = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < p; ++k) {
        const double d = std::fabs(a.at(k, k));
        diag_max = std::max(diag_max, d);
        diag_min = std::min(diag_min, d);
    }
    const double cond = (diag_min > 0.0) ? diag_max / diag_min
                                         : std::numeric_limits<double>::infinity();
    if (!(cond < kConditionLimit)) {
        return ridge_solve(m, t, cond);
    }

    std::vector<double> w(p);
    for (std::size_t k = p; k-- > 0;) {
        double acc = qtb[k];
        for (std::size_t j = k + 1; j < p; ++j) acc -= a.at(k, j) * w[j];
        w[k] = acc / a.at(k, k);
    }
    for (double x : w) {
        if (!std::isfinite(x)) return ridge_solve(m, t, cond);
    }

    LeastSquaresResult res;
    res.weights = std::move(w);
    res.report.method = SolveMethod::Qr;
    res.report.ridge_lambda = 0.0;
    res.report.condition_estimate = cond;
    res.report.residual_norm = vector_norm(residual_vector(m, res.weights, t));
    return res;
}

std::vector<double> solve_linear_system(const DenseMatrix& a, const std::vector<double>& b) {
    const std::size_t n = a.rows();
    if (n == 0 || a.cols() != n) {
        throw std::invalid_argument("solve_linear_system: matrix must be square and nonempty");
    }
    if (b.size() != n) {
        throw std::invalid_argument("solve_linear_system: rhs length mismatch");
    }
    a.check_finite("solve_linear_system");
    check_finite_vec(b, "solve_linear_system");

    DenseMatrix work = a;
    std::vector<double> rhs = b;

    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) scale = std::max(scale, std::fabs(work.at(i, j)));
    }
    const double pivot_tol = scale * 1e-13;

    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t best = k;
        double best_abs = std::fabs(work.at(perm[k], k));
        for (std::size_t i = k + 1; i < n; ++i) {
            const double cand = std::fabs(work.at(perm[i], k));
            if (cand > best_abs) {
                best_abs = cand;
                best = i;
            }
        }
        if (!(best_abs > pivot_tol)) {
            throw SingularMatrix("solve_linear_system: singular to working precision at column " +
                                 std::to_string(k));
        }
        std::swap(perm[k], perm[best]);

        const double pivot = work.at(perm[k], k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const double factor = work.at(perm[i], k) / pivot;
            if (factor == 0.0) continue;
            work.at(perm[i], k) = 0.0;
            for (std::size_t j = k + 1; j < n; ++j) {
                work.at(perm[i], j) -= factor * work.at(perm[k], j);
            }
            rhs[perm[i]] -= factor * rhs[perm[k]];
        }
    }

    std::vector<double> x(n);
    for (std::size_t k = n; k-- > 0;) {
        double acc = rhs[perm[k]];
        for (std::size_t j = k + 1; j < n; ++j) acc -= work.at(perm[k], j) * x[j];
        x[k] = acc / work.at(perm[k], k);
    }
    return x;
}

}  // namespace tsh
