#include "tvc/calibrate/asymptotic.hpp"

#include "tvc/core/errors.hpp"
#include "tvc/glrt/statistic.hpp"
#include "tvc/loclin/local_linear.hpp"
#include "tvc/lrcov/long_run_cov.hpp"

#include <boost/math/distributions/normal.hpp>

#include <cmath>

namespace tvc {

namespace {

double upper_normal_tail(double z) {
    const boost::math::normal_distribution<double> std_normal(0.0, 1.0);
    return boost::math::cdf(boost::math::complement(std_normal, z));
}

std::vector<Matrix> local_h(const Matrix& x, const Kernel& k, double b,
                            const std::vector<Matrix>& roots) {
    const LocalLinearSmoother sm(x, k, b);
    const auto p = x.cols();
    std::vector<Matrix> h(sm.n());
    for (std::size_t i = 0; i < sm.n(); ++i) {
        const Matrix m0 = sm.design(i).topLeftCorner(p, p);
        h[i] = roots[i] * m0.ldlt().solve(roots[i]);
    }
    return h;
}

void warn_unless_prewhitened(const NullSpec& null, TestOutcome& out) {
    const auto* s = null.as_simple();
    if (s == nullptr || s->beta0) {
        out.warnings.push_back(
            "null is not prewhitened to beta = 0; the asymptotic bias term is ignored");
    }
}

}  // namespace

HTraces h_traces(const Matrix& x, const Kernel& k, double b, const std::vector<Matrix>& roots) {
    if (roots.size() != static_cast<std::size_t>(x.rows())) {
        fail(ErrorCode::BadInput, "one covariance root per observation is required");
    }
    const std::vector<Matrix> h = local_h(x, k, b, roots);
    HTraces out;
    for (const auto& hi : h) {
        out.avg_tr_h += hi.trace();
        out.avg_tr_h2 += (hi * hi).trace();
    }
    const double n = static_cast<double>(h.size());
    out.avg_tr_h /= n;
    out.avg_tr_h2 /= n;
    return out;
}

TestOutcome asym_pvalue_single(const TimeSeriesSample& sample, const NullSpec& null,
                               const Kernel& k, double b, const LongRunCov& lrcov) {
    TestOutcome out;
    out.method = Method::Asym;
    warn_unless_prewhitened(null, out);
    out.statistic = glrt_single(sample, null, k, b);

    const double n = static_cast<double>(sample.n());
    const double v_hat = out.statistic.ledger.front().rss_null / n;
    const HTraces tr = h_traces(sample.x(), k, b, lrcov.sqrt);
    const double sigma = std::sqrt(k.ktilde_l2() * tr.avg_tr_h2);
    const double centered = 2.0 * out.statistic.value + k.ktilde(0.0) * tr.avg_tr_h / (b * v_hat);
    const double z = std::sqrt(b) * centered * v_hat / sigma;

    out.plugins.v_hat = v_hat;
    out.plugins.avg_tr_h = tr.avg_tr_h;
    out.plugins.avg_tr_h2 = tr.avg_tr_h2;
    out.plugins.sigma_hat = sigma;
    out.plugins.z = z;
    if (const auto* c = null.as_component(); c != nullptr && c->p1 < sample.p()) {
        out.plugins.sigma1_hat = sigma1_diagnostic(sample.x(), c->p1, k, b, lrcov);
    }
    out.p_value = upper_normal_tail(z);
    return out;
}

TestOutcome asym_pvalue_averaged(const TimeSeriesSample& sample, const NullSpec& null,
                                 const Kernel& k, const BandwidthGrid& grid,
                                 const LongRunCov& lrcov) {
    if (!grid.rate()) {
        fail(ErrorCode::NoRateForm, "asymptotic averaged test needs a grid with a rate form");
    }
    const RateForm rate = *grid.rate();
    if (!(rate.c_min > 0.0) || !(rate.c_max > rate.c_min)) {
        fail(ErrorCode::BadRange, "rate form needs 0 < c_min < c_max");
    }
    TestOutcome out;
    out.method = Method::Asym;
    warn_unless_prewhitened(null, out);
    for (const auto& w : grid.warnings()) out.warnings.push_back(w);
    out.statistic = averaged_statistic(sample, null, k, grid);

    const double n = static_cast<double>(sample.n());
    const double scale = std::pow(n, rate.gamma);
    const double rss0_simple = null.kind() == NullKind::Component ? 0.0 : rss_null(sample, null, k, grid.middle());

    // Composite Simpson over z in [c_min, c_max].
    const int intervals = kAveragedIntegralNodes - 1;
    const double h = (rate.c_max - rate.c_min) / intervals;
    double integral = 0.0;
    for (int m = 0; m <= intervals; ++m) {
        const double z = rate.c_min + h * m;
        const double b = z / scale;
        const double rss_a = local_linear_fit(sample, k, b).rss;
        const double rss_0 =
            null.kind() == NullKind::Component ? rss_null(sample, null, k, b) : rss0_simple;
        const double w = (m == 0 || m == intervals) ? 1.0 : (m % 2 == 1 ? 4.0 : 2.0);
        integral += w * (rss_0 - rss_a);
    }
    integral *= h / 3.0;

    const HTraces tr = h_traces(sample.x(), k, grid.middle(), lrcov.sqrt);
    const double q2 = q_squared_integral(k, rate.c_min, rate.c_max);
    const double sigma_star = std::sqrt(q2 * tr.avg_tr_h2);
    const double center =
        scale * k.ktilde(0.0) * std::log(rate.c_max / rate.c_min) * tr.avg_tr_h;
    const double z = (integral + center) / (std::sqrt(scale) * sigma_star);

    out.plugins.v_hat = out.statistic.ledger.front().rss_null / n;
    out.plugins.avg_tr_h = tr.avg_tr_h;
    out.plugins.avg_tr_h2 = tr.avg_tr_h2;
    out.plugins.sigma_star_hat = sigma_star;
    out.plugins.lambda_integral = integral;
    out.plugins.z = z;
    out.p_value = upper_normal_tail(z);
    return out;
}

double sigma1_diagnostic(const Matrix& x, std::size_t p1, const Kernel& k, double b,
                         const LongRunCov& lrcov) {
    const auto p = static_cast<std::size_t>(x.cols());
    if (p1 < 1 || p1 >= p) fail(ErrorCode::BadInput, "sigma_1 needs 1 <= p1 < p");
    const auto p2 = static_cast<Eigen::Index>(p - p1);
    std::vector<Matrix> lower(lrcov.n());
    for (std::size_t i = 0; i < lrcov.n(); ++i) {
        lower[i] = psd_sqrt(lrcov.lambda_hat[i].bottomRightCorner(p2, p2));
    }
    const std::vector<Matrix> h = local_h(x, k, b, lrcov.sqrt);
    const std::vector<Matrix> h2 = local_h(x.rightCols(p2), k, b, lower);
    double acc = 0.0;
    for (std::size_t i = 0; i < h.size(); ++i) {
        Matrix hs = h[i];
        hs.bottomRightCorner(p2, p2) -= h2[i];
        acc += (hs * hs).trace();
    }
    return std::sqrt(k.ktilde_l2() * acc / static_cast<double>(h.size()));
}

}  // namespace tvc
