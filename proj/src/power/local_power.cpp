#include "tvc/power/local_power.hpp"

#include "tvc/core/errors.hpp"
#include "tvc/core/quadrature.hpp"

#include <boost/math/distributions/normal.hpp>

#include <cmath>

namespace tvc::power {

namespace {

constexpr double kFdStep = 1e-4;

double std_normal_cdf(double x) {
    return boost::math::cdf(boost::math::normal_distribution<double>(0.0, 1.0), x);
}

double z_upper(double alpha) {
    return boost::math::quantile(boost::math::normal_distribution<double>(0.0, 1.0), 1.0 - alpha);
}

double quartic(double x, double c) {
    return x * x * x * x + c * x * x * x + c * c * x * x + c * c * c * x + c * c * c * c - 5.0;
}

}  // namespace

Functionals f_functionals(const CurveFn& f, const Matrix& m_t0, const CurveFn& second_derivative) {
    const CurveFn f2 = second_derivative ? second_derivative : CurveFn([&f](double t) -> Vector {
        const double h = kFdStep;
        return (-f(t + 2 * h) + 16.0 * f(t + h) - 30.0 * f(t) + 16.0 * f(t - h) - f(t - 2 * h)) /
               (12.0 * h * h);
    });
    Functionals out;
    out.f1 = quad::integrate([&](double t) {
        const Vector v = f(t);
        return v.dot(m_t0 * v);
    }, -1.0, 1.0, 1e-10);
    out.f2 = quad::integrate([&](double t) {
        const Vector v = f2(t);
        return v.dot(m_t0 * v);
    }, -1.0, 1.0, 1e-8);
    return out;
}

void PowerSpec::validate() const {
    if (!(alpha > 0.0 && alpha < 1.0)) fail(ErrorCode::BadRange, "alpha must lie in (0, 1)");
    if (!(sigma > 0.0)) fail(ErrorCode::BadRange, "sigma must be positive");
    if (sigma_star && !(*sigma_star > 0.0)) fail(ErrorCode::BadRange, "sigma_star must be positive");
}

double r1(const PowerSpec& spec, double c) {
    const double mu2sq = spec.mu2 * spec.mu2;
    return (std::sqrt(c) * spec.f1 - std::pow(c, 4.5) * mu2sq * spec.f2 / 4.0) / spec.sigma;
}

double sigma_star(const PowerSpec& spec, double c_min, double c_max) {
    if (spec.sigma_star) return *spec.sigma_star;
    return spec.sigma *
           std::sqrt(q_squared_integral(spec.kernel, c_min, c_max) / spec.kernel.ktilde_l2());
}

double r2(const PowerSpec& spec, double c_min, double c_max) {
    const double mu2sq = spec.mu2 * spec.mu2;
    const double num = (c_max - c_min) * spec.f1 -
                       (std::pow(c_max, 5) - std::pow(c_min, 5)) * mu2sq * spec.f2 / 20.0;
    return num / sigma_star(spec, c_min, c_max);
}

double local_power_single(const PowerSpec& spec, double c) {
    spec.validate();
    if (!(c > 0.0)) fail(ErrorCode::BadRange, "bandwidth constant c must be positive");
    return std_normal_cdf(r1(spec, c) - z_upper(spec.alpha));
}

double optimal_c(double f1, double f2, double mu2) {
    if (!(f1 > 0.0) || !(f2 > 0.0) || !(mu2 > 0.0)) {
        fail(ErrorCode::NonPositive, "optimal c needs F1 > 0, F2 > 0 and mu2 > 0");
    }
    return std::pow(4.0 * f1 / (9.0 * mu2 * mu2 * f2), 0.25);
}

double local_power_averaged(const PowerSpec& spec, double c_min, double c_max) {
    spec.validate();
    if (!(c_min > 0.0) || !(c_max > c_min)) {
        fail(ErrorCode::BadRange, "averaged power needs 0 < c_min < c_max");
    }
    return std_normal_cdf(r2(spec, c_min, c_max) - z_upper(spec.alpha));
}

double example5_c_max(double c) {
    if (!(c > 0.0 && c <= 1.0)) fail(ErrorCode::BadRange, "c_min_tilde must lie in (0, 1]");
    double lo = c;
    double hi = std::pow(5.0, 0.25) + 1.0;
    if (quartic(lo, c) == 0.0) return lo;
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (quartic(mid, c) > 0.0) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return 0.5 * (lo + hi);
}

PowerRatio power_ratio_example5(const Kernel& k, double c_min_tilde) {
    PowerRatio out;
    out.c_min_tilde = c_min_tilde;
    out.c_max_tilde = example5_c_max(c_min_tilde);
    const double width = out.c_max_tilde - c_min_tilde;
    if (width <= 1e-12) {
        out.ratio = 1.0;
        return out;
    }
    out.ratio = width * std::sqrt(k.ktilde_l2()) /
                std::sqrt(q_squared_integral(k, c_min_tilde, out.c_max_tilde));
    return out;
}

std::vector<PowerRatio> power_curve(const Kernel& k, int points) {
    if (points < 1) fail(ErrorCode::BadRange, "power curve needs at least one point");
    std::vector<PowerRatio> out;
    out.reserve(static_cast<std::size_t>(points));
    for (int i = 1; i <= points; ++i) {
        out.push_back(power_ratio_example5(k, static_cast<double>(i) / (points + 1)));
    }
    return out;
}

}  // namespace tvc::power
