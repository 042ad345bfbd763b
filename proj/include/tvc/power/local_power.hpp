#pragma once

#include "tvc/core/kernel.hpp"
#include "tvc/core/sample.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace tvc::power {

using CurveFn = std::function<Vector(double)>;

struct Functionals {
    double f1 = 0.0;
    double f2 = 0.0;
};

/**
 * @brief F1 = int f(t)' M f(t) dt and F2 = int f''(t)' M f''(t) dt over [-1, 1].
 *
 * When `second_derivative` is empty f'' is approximated by the five-point
 * central difference with step 1e-4.
 */
Functionals f_functionals(const CurveFn& f, const Matrix& m_t0,
                          const CurveFn& second_derivative = {});

/// Local-alternative inputs of the power formulas.
struct PowerSpec {
    double f1 = 0.0;
    double f2 = 0.0;
    /// Scale of the single-bandwidth statistic.
    double sigma = 1.0;
    /// Scale of the averaged statistic; derived from sigma and the kernel when unset.
    std::optional<double> sigma_star;
    double mu2 = 0.2;
    double alpha = 0.1;
    Kernel kernel = Kernel::epanechnikov();

    /// Throws Error(BadRange) unless 0 < alpha < 1 and sigma > 0.
    void validate() const;
};

/// R1 = (c^{1/2} F1 - c^{9/2} mu2^2 F2 / 4) / sigma.
double r1(const PowerSpec& spec, double c);
/// R2 = [(c_max - c_min) F1 - (c_max^5 - c_min^5) mu2^2 F2 / 20] / sigma_star.
double r2(const PowerSpec& spec, double c_min, double c_max);

/// sigma * sqrt(int Q(c_max, y)^2 dy / int Ktilde^2), or the explicit override.
double sigma_star(const PowerSpec& spec, double c_min, double c_max);

/// Phi(R1 - z_{1-alpha}); requires c > 0.
double local_power_single(const PowerSpec& spec, double c);

/// (4 F1 / (9 mu2^2 F2))^{1/4}; Error(NonPositive) unless F1, F2, mu2 > 0.
double optimal_c(double f1, double f2, double mu2);

/// Phi(R2 - z_{1-alpha}); Error(BadRange) unless 0 < c_min < c_max.
double local_power_averaged(const PowerSpec& spec, double c_min, double c_max);

/// Positive root of x^4 + c x^3 + c^2 x^2 + c^3 x + c^4 = 5 for 0 < c <= 1.
double example5_c_max(double c_min_tilde);

struct PowerRatio {
    double c_min_tilde = 0.0;
    double c_max_tilde = 0.0;
    double ratio = 0.0;
};

/// R2/R1 under the coupling that removes F1 and F2; equals 1 at c_min_tilde = 1.
PowerRatio power_ratio_example5(const Kernel& k, double c_min_tilde);

/// Ratios at c_min_tilde = i / (points + 1), i = 1..points.
std::vector<PowerRatio> power_curve(const Kernel& k, int points);

}  // namespace tvc::power
