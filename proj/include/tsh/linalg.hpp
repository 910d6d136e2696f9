#ifndef TSH_LINALG_HPP
#define TSH_LINALG_HPP

#include <cstddef>
#include <string>
#include <vector>

namespace tsh {

/// Dense row-major matrix of finite reals. Sized for regression problems
/// up to a few thousand rows and a few hundred columns.
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    const std::vector<double>& data() const { return data_; }

    /// Throws invalid_argument when any entry is non-finite.
    void check_finite(const std::string& context) const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

enum class SolveMethod { Qr, Cholesky, RidgeFallback };

struct SolveReport {
    SolveMethod method = SolveMethod::Qr;
    double residual_norm = 0.0;
    double ridge_lambda = 0.0;       // > 0 iff method == RidgeFallback
    double condition_estimate = 0.0; // ratio of extreme |R| diagonal entries
};

struct LeastSquaresResult {
    std::vector<double> weights;
    SolveReport report;
};

/// Minimizes ||M w - t||^2. Householder QR on M; switches to a ridge solve
/// of (M'M + lambda I) w = M't when the R diagonal signals rank trouble
/// (condition estimate above 1e12) or when rows < cols.
LeastSquaresResult solve_least_squares(const DenseMatrix& m, const std::vector<double>& t);

/// Gaussian elimination with partial pivoting. Throws SingularMatrix when a
/// pivot vanishes to working precision.
std::vector<double> solve_linear_system(const DenseMatrix& a, const std::vector<double>& b);

}  // namespace tsh

#endif
