#pragma once

#include "tvc/calibrate/test_outcome.hpp"
#include "tvc/core/bandwidth_grid.hpp"
#include "tvc/loclin/null_spec.hpp"

namespace tvc {

/// Nodes of the composite Simpson rule used for the integral form of the averaged statistic.
inline constexpr int kAveragedIntegralNodes = 17;

/// Grid averages of tr H(t_i) and tr H(t_i)^2 with H = L M^{-1} L, M(t_i) = S_{n,0}(t_i)
/// at bandwidth b and L = Lambda_hat^{1/2}(t_i).
struct HTraces {
    double avg_tr_h = 0.0;
    double avg_tr_h2 = 0.0;
};

HTraces h_traces(const Matrix& x, const Kernel& k, double b, const std::vector<Matrix>& roots);

/**
 * @brief Normal calibration of lambda_n at one bandwidth.
 *
 * V_hat = RSS_0 / n, sigma_hat = sqrt(int Ktilde^2 * avg tr H^2) and
 * Z = sqrt(b) (2 lambda_n + Ktilde(0) avg tr H / (b V_hat)) V_hat / sigma_hat;
 * the p-value is the upper tail 1 - Phi(Z). The bias term is omitted, which is
 * only valid after prewhitening; any other null draws a warning.
 */
TestOutcome asym_pvalue_single(const TimeSeriesSample& sample, const NullSpec& null,
                               const Kernel& k, double b, const LongRunCov& lrcov);

/**
 * @brief Normal calibration of the averaged statistic over b = z n^{-gamma}, z in [c_min, c_max].
 *
 * The statistic is int (RSS_0 - RSS_a(z n^{-gamma})) dz, evaluated by
 * composite Simpson on 17 nodes. It is centered by
 * n^gamma Ktilde(0) log(c_max / c_min) avg tr H and scaled by
 * n^{gamma/2} sigma_star, sigma_star^2 = int Q(c_max, y)^2 dy * avg tr H^2, with
 * H taken at the middle grid bandwidth. Errors: NoRateForm without a rate
 * form, BadRange when c_min == c_max.
 */
TestOutcome asym_pvalue_averaged(const TimeSeriesSample& sample, const NullSpec& null,
                                 const Kernel& k, const BandwidthGrid& grid,
                                 const LongRunCov& lrcov);

/// sigma_1 = sqrt(int Ktilde^2 * avg tr (H - H_2)^2), H_2 built from the last p - p1
/// regressors and the lower-right block of Lambda_hat, embedded in the lower-right corner.
double sigma1_diagnostic(const Matrix& x, std::size_t p1, const Kernel& k, double b,
                         const LongRunCov& lrcov);

}  // namespace tvc
