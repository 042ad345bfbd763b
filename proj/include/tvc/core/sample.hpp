#pragma once

#include <Eigen/Dense>

#include <cstddef>

namespace tvc {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/**
 * @brief Observations of the time-varying coefficient model y_i = x_i' beta(t_i) + e_i.
 *
 * Row i of `x` is the regressor vector x_i. The time grid is implicit:
 * t_i = (i + 1) / n for the zero-based row index i, so the grid is strictly
 * increasing in (0, 1] and ends at exactly 1.
 */
class TimeSeriesSample {
public:
    /// Validates shapes and finiteness; throws Error(BadInput) otherwise.
    TimeSeriesSample(Matrix x, Vector y);

    std::size_t n() const noexcept { return static_cast<std::size_t>(y_.size()); }
    std::size_t p() const noexcept { return static_cast<std::size_t>(x_.cols()); }

    const Matrix& x() const noexcept { return x_; }
    const Vector& y() const noexcept { return y_; }

    /// Rescaled time of zero-based observation i.
    double t(std::size_t i) const noexcept {
        return static_cast<double>(i + 1) / static_cast<double>(y_.size());
    }
    Vector time_grid() const;

    /// Same regressors, new response.
    TimeSeriesSample with_response(Vector y) const;
    /// Keeps the regressor columns [first, first + count).
    TimeSeriesSample with_columns(std::size_t first, std::size_t count) const;

private:
    Matrix x_;
    Vector y_;
};

}  // namespace tvc
