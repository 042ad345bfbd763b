#pragma once

#include "tvc/core/kernel.hpp"
#include "tvc/core/sample.hpp"
#include "tvc/loclin/null_spec.hpp"

#include <Eigen/Cholesky>

#include <cstddef>
#include <vector>

namespace tvc {

/// Condition-number ceiling for the 2p x 2p local design matrix.
inline constexpr double kMaxDesignCondition = 1e12;

/// S_{n,l}(t) = (nb)^{-1} sum_i x_i x_i' [(t_i - t)/b]^l K((t_i - t)/b), with 0^0 = 1.
Matrix design_moment(const TimeSeriesSample& sample, const Kernel& k, double b, double t, int l);

/// R_{n,l}(t) = (nb)^{-1} sum_i x_i y_i [(t_i - t)/b]^l K((t_i - t)/b).
Vector response_moment(const TimeSeriesSample& sample, const Kernel& k, double b, double t, int l);

/**
 * @brief Local linear estimate of beta(.) on the sample grid at one bandwidth.
 *
 * beta_deriv_hat holds the derivative estimate (the second solution block
 * divided by b). `condition` is the estimated condition number of the local
 * design matrix at each t_i.
 */
struct LocalLinearFit {
    double bandwidth = 0.0;
    Matrix beta_hat;
    Matrix beta_deriv_hat;
    Vector fitted;
    Vector residuals;
    double rss = 0.0;
    Vector condition;
};

/**
 * @brief Factorized local linear smoother for fixed regressors, kernel and bandwidth.
 *
 * Construction assembles and factorizes the block design matrix
 * S_n(t_i) = [S_{n,0} S_{n,1}; S_{n,1} S_{n,2}] at every grid point; any
 * number of responses can then be fitted. The smoother is linear in y, so it
 * also exposes its hat matrix.
 *
 * Throws Error(SingularDesign) carrying t_i when a design matrix is
 * numerically singular (condition number above 1e12); there is no silent
 * regularization.
 */
class LocalLinearSmoother {
public:
    LocalLinearSmoother(const Matrix& x, const Kernel& k, double b);

    std::size_t n() const noexcept { return static_cast<std::size_t>(x_.rows()); }
    std::size_t p() const noexcept { return static_cast<std::size_t>(x_.cols()); }
    double bandwidth() const noexcept { return b_; }
    const Kernel& kernel() const noexcept { return kernel_; }
    const Matrix& x() const noexcept { return x_; }

    /// Observations with nonzero kernel weight at t_i are [window_begin(i), window_end(i)).
    std::size_t window_begin(std::size_t i) const noexcept { return windows_[i].first; }
    std::size_t window_end(std::size_t i) const noexcept { return windows_[i].second; }
    /// Scaled distance (t_j - t_i) / b.
    double offset(std::size_t i, std::size_t j) const noexcept;
    /// K((t_j - t_i)/b) / (nb).
    double weight(std::size_t i, std::size_t j) const noexcept;

    const Matrix& design(std::size_t i) const { return design_[i]; }
    const Matrix& design_inverse(std::size_t i) const { return inverse_[i]; }
    double condition(std::size_t i) const { return condition_[i]; }

    LocalLinearFit fit(const Vector& y) const;
    /// Fitted values only.
    Vector smooth(const Vector& y) const;
    /// Dense n x n matrix H with fitted = H y.
    Matrix hat_matrix() const;
    /// diag(H)_i = z_i' S_n(t_i)^{-1} z_i K(0) / (nb).
    Vector hat_diagonal() const;

private:
    Vector local_response(std::size_t i, const Vector& y) const;

    Matrix x_;
    Kernel kernel_;
    double b_;
    std::vector<std::pair<std::size_t, std::size_t>> windows_;
    std::vector<Matrix> design_;
    std::vector<Eigen::LDLT<Matrix>> factor_;
    std::vector<Matrix> inverse_;
    std::vector<double> condition_;
};

/// Fits y on x at bandwidth b over the whole sample grid.
LocalLinearFit local_linear_fit(const TimeSeriesSample& sample, const Kernel& k, double b);

/**
 * @brief Residual sum of squares under a null hypothesis.
 *
 * Simple nulls give sum (y_i - x_i' beta0(t_i))^2 directly. Component nulls
 * subtract the known part x_i^(1)' beta0^(1)(t_i) and fit the remainder on
 * the last p - p1 regressors by local linear regression at the same b (RSS_1).
 * Parametric nulls are fitted by least squares in theta; b is unused for
 * simple and parametric nulls.
 */
double rss_null(const TimeSeriesSample& sample, const NullSpec& null, const Kernel& k, double b);

}  // namespace tvc
