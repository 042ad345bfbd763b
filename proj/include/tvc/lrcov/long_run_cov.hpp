#pragma once

#include "tvc/core/kernel.hpp"
#include "tvc/core/sample.hpp"

#include <cstddef>
#include <vector>

namespace tvc {

/**
 * @brief Local lag-window estimate of the long-run covariance Lambda(t_i) on the sample grid.
 *
 * With L_i = x_i e_i and block sums s_i = sum_{|j| <= m} L_{i+j} (indices
 * truncated to the sample), Delta_i = s_i s_i' / (2m + 1) and
 * Lambda_hat(t) = sum_i w(t, i) Delta_i with normalized kernel weights
 * w(t, i) proportional to K((t_i - t)/tau).
 */
struct LongRunCov {
    std::vector<Matrix> lambda_hat;
    /// Symmetric PSD square roots of lambda_hat.
    std::vector<Matrix> sqrt;
    std::size_t m = 0;
    double tau = 0.0;
    /// Smallest eigenvalue seen before clamping (should be >= -1e-10).
    double min_eigenvalue = 0.0;

    std::size_t n() const noexcept { return lambda_hat.size(); }
};

/// floor(n^{2/7}).
std::size_t default_lrcov_window(std::size_t n);
/// n^{-1/7}.
double default_lrcov_tau(std::size_t n);

/// Errors: BadWindow if 2m + 1 > n, BadRange unless 0 < tau < 1,
/// EmptyWeight if some t_i receives zero total kernel weight.
LongRunCov longrun_cov(const TimeSeriesSample& sample, const Vector& residuals, std::size_t m,
                       double tau, const Kernel& k);

/// Same estimator with the default window and tau.
LongRunCov longrun_cov(const TimeSeriesSample& sample, const Vector& residuals, const Kernel& k);

/// Lambda_hat at a single time point t; avoids the full O(n^2 tau) grid for large samples.
Matrix longrun_cov_at(const TimeSeriesSample& sample, const Vector& residuals, std::size_t m,
                      double tau, const Kernel& k, double t);

/// Block outer products Delta_i, i = 0..n-1.
std::vector<Matrix> lrcov_blocks(const TimeSeriesSample& sample, const Vector& residuals,
                                 std::size_t m);

/// Symmetric PSD square root with negative eigenvalues clamped to zero.
/// Throws Error(NotSymmetric) if A deviates from symmetry by more than 1e-8.
Matrix psd_sqrt(const Matrix& a);

}  // namespace tvc
