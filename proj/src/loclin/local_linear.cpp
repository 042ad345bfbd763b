#include "tvc/loclin/local_linear.hpp"

#include "tvc/core/errors.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace tvc {

namespace {

void check_bandwidth(double b) {
    if (!(b > 0.0 && b < 1.0)) {
        fail(ErrorCode::BadRange, "bandwidth must lie in (0, 1), got " + std::to_string(b));
    }
}

double ipow(double u, int l) {
    double r = 1.0;
    for (int k = 0; k < l; ++k) r *= u;
    return r;
}

}  // namespace

Matrix design_moment(const TimeSeriesSample& sample, const Kernel& k, double b, double t, int l) {
    check_bandwidth(b);
    if (l < 0) fail(ErrorCode::BadRange, "moment order must be nonnegative");
    const auto p = static_cast<Eigen::Index>(sample.p());
    const double nb = static_cast<double>(sample.n()) * b;
    Matrix s = Matrix::Zero(p, p);
    for (std::size_t i = 0; i < sample.n(); ++i) {
        const double u = (sample.t(i) - t) / b;
        const double w = k(u);
        if (w == 0.0) continue;
        const auto row = sample.x().row(static_cast<Eigen::Index>(i));
        s.noalias() += (w * ipow(u, l)) * row.transpose() * row;
    }
    return s / nb;
}

Vector response_moment(const TimeSeriesSample& sample, const Kernel& k, double b, double t, int l) {
    check_bandwidth(b);
    if (l < 0) fail(ErrorCode::BadRange, "moment order must be nonnegative");
    const auto p = static_cast<Eigen::Index>(sample.p());
    const double nb = static_cast<double>(sample.n()) * b;
    Vector r = Vector::Zero(p);
    for (std::size_t i = 0; i < sample.n(); ++i) {
        const double u = (sample.t(i) - t) / b;
        const double w = k(u);
        if (w == 0.0) continue;
        const auto ii = static_cast<Eigen::Index>(i);
        r.noalias() += (w * ipow(u, l) * sample.y()[ii]) * sample.x().row(ii).transpose();
    }
    return r / nb;
}

LocalLinearSmoother::LocalLinearSmoother(const Matrix& x, const Kernel& k, double b)
    : x_(x), kernel_(k), b_(b) {
    check_bandwidth(b);
    const std::size_t nn = n();
    const auto pp = static_cast<Eigen::Index>(p());
    if (nn == 0 || pp == 0) fail(ErrorCode::BadInput, "empty regressor matrix");

    const double dn = static_cast<double>(nn);
    const double reach = b * k.support() * dn;
    const auto half = static_cast<std::size_t>(std::floor(reach)) + 1;

    windows_.resize(nn);
    design_.resize(nn);
    factor_.resize(nn);
    inverse_.resize(nn);
    condition_.resize(nn);

    for (std::size_t i = 0; i < nn; ++i) {
        const std::size_t lo = i > half ? i - half : 0;
        const std::size_t hi = std::min(nn, i + half + 1);
        // Trim to the exact support so windows hold only nonzero weights.
        std::size_t first = lo;
        while (first < hi && weight(i, first) == 0.0) ++first;
        std::size_t last = hi;
        while (last > first && weight(i, last - 1) == 0.0) --last;
        windows_[i] = {first, last};

        Matrix s = Matrix::Zero(2 * pp, 2 * pp);
        for (std::size_t j = first; j < last; ++j) {
            const double w = weight(i, j);
            const double u = offset(i, j);
            const auto row = x_.row(static_cast<Eigen::Index>(j));
            const Matrix outer = row.transpose() * row;
            s.topLeftCorner(pp, pp).noalias() += w * outer;
            s.topRightCorner(pp, pp).noalias() += (w * u) * outer;
            s.bottomRightCorner(pp, pp).noalias() += (w * u * u) * outer;
        }
        s.bottomLeftCorner(pp, pp) = s.topRightCorner(pp, pp);

        Eigen::LDLT<Matrix> ldlt(s);
        const double rcond = ldlt.info() == Eigen::Success ? ldlt.rcond() : 0.0;
        const double cond =
            rcond > 0.0 ? 1.0 / rcond : std::numeric_limits<double>::infinity();
        if (!(cond <= kMaxDesignCondition)) {
            const double ti = static_cast<double>(i + 1) / dn;
            std::ostringstream msg;
            msg << "local design matrix at t=" << ti << " (bandwidth " << b
                << ") is singular, condition estimate " << cond
                << "; bandwidth too small or degenerate regressors";
            Error err(ErrorCode::SingularDesign, msg.str());
            err.time_point = ti;
            err.bandwidth = b;
            throw err;
        }
        condition_[i] = cond;
        inverse_[i] = ldlt.solve(Matrix::Identity(2 * pp, 2 * pp));
        design_[i] = std::move(s);
        factor_[i] = std::move(ldlt);
    }
}

double LocalLinearSmoother::offset(std::size_t i, std::size_t j) const noexcept {
    const double dn = static_cast<double>(n());
    return (static_cast<double>(j + 1) / dn - static_cast<double>(i + 1) / dn) / b_;
}

double LocalLinearSmoother::weight(std::size_t i, std::size_t j) const noexcept {
    return kernel_(offset(i, j)) / (static_cast<double>(n()) * b_);
}

Vector LocalLinearSmoother::local_response(std::size_t i, const Vector& y) const {
    const auto pp = static_cast<Eigen::Index>(p());
    Vector r = Vector::Zero(2 * pp);
    for (std::size_t j = window_begin(i); j < window_end(i); ++j) {
        const double w = weight(i, j);
        const double u = offset(i, j);
        const auto jj = static_cast<Eigen::Index>(j);
        const double wy = w * y[jj];
        r.head(pp).noalias() += wy * x_.row(jj).transpose();
        r.tail(pp).noalias() += (wy * u) * x_.row(jj).transpose();
    }
    return r;
}

LocalLinearFit LocalLinearSmoother::fit(const Vector& y) const {
    if (static_cast<std::size_t>(y.size()) != n()) {
        fail(ErrorCode::BadInput, "response length does not match the smoother");
    }
    const auto nn = static_cast<Eigen::Index>(n());
    const auto pp = static_cast<Eigen::Index>(p());
    LocalLinearFit out;
    out.bandwidth = b_;
    out.beta_hat.resize(nn, pp);
    out.beta_deriv_hat.resize(nn, pp);
    out.fitted.resize(nn);
    out.condition.resize(nn);
    for (Eigen::Index i = 0; i < nn; ++i) {
        const auto ii = static_cast<std::size_t>(i);
        const Vector eta = factor_[ii].solve(local_response(ii, y));
        out.beta_hat.row(i) = eta.head(pp).transpose();
        out.beta_deriv_hat.row(i) = (eta.tail(pp) / b_).transpose();
        out.fitted[i] = x_.row(i).dot(eta.head(pp));
        out.condition[i] = condition_[ii];
    }
    out.residuals = y - out.fitted;
    out.rss = out.residuals.squaredNorm();
    return out;
}

Vector LocalLinearSmoother::smooth(const Vector& y) const {
    const auto nn = static_cast<Eigen::Index>(n());
    const auto pp = static_cast<Eigen::Index>(p());
    Vector fitted(nn);
    for (Eigen::Index i = 0; i < nn; ++i) {
        const auto ii = static_cast<std::size_t>(i);
        const Vector eta = factor_[ii].solve(local_response(ii, y));
        fitted[i] = x_.row(i).dot(eta.head(pp));
    }
    return fitted;
}

Matrix LocalLinearSmoother::hat_matrix() const {
    const auto nn = static_cast<Eigen::Index>(n());
    const auto pp = static_cast<Eigen::Index>(p());
    Matrix h = Matrix::Zero(nn, nn);
    for (Eigen::Index i = 0; i < nn; ++i) {
        const auto ii = static_cast<std::size_t>(i);
        // a = S^{-1} z_i with z_i = (x_i', 0')'.
        const Vector a = inverse_[ii].leftCols(pp) * x_.row(i).transpose();
        for (std::size_t j = window_begin(ii); j < window_end(ii); ++j) {
            const auto jj = static_cast<Eigen::Index>(j);
            const double u = offset(ii, j);
            h(i, jj) = weight(ii, j) * (a.head(pp) + u * a.tail(pp)).dot(x_.row(jj));
        }
    }
    return h;
}

Vector LocalLinearSmoother::hat_diagonal() const {
    const auto nn = static_cast<Eigen::Index>(n());
    const auto pp = static_cast<Eigen::Index>(p());
    const double k0 = kernel_(0.0) / (static_cast<double>(nn) * b_);
    Vector d(nn);
    for (Eigen::Index i = 0; i < nn; ++i) {
        const auto xi = x_.row(i).transpose();
        d[i] = xi.dot(inverse_[static_cast<std::size_t>(i)].topLeftCorner(pp, pp) * xi) * k0;
    }
    return d;
}

LocalLinearFit local_linear_fit(const TimeSeriesSample& sample, const Kernel& k, double b) {
    return LocalLinearSmoother(sample.x(), k, b).fit(sample.y());
}

double rss_null(const TimeSeriesSample& sample, const NullSpec& null, const Kernel& k, double b) {
    null.validate(sample.p());
    if (const auto* s = null.as_simple()) {
        return (sample.y() - simple_null_fit(sample, *s)).squaredNorm();
    }
    if (const auto* c = null.as_component()) {
        const Vector ystar = sample.y() - component_null_offset(sample, *c);
        const std::size_t rest = sample.p() - c->p1;
        if (rest == 0) return ystar.squaredNorm();
        const Matrix x2 = sample.x().rightCols(static_cast<Eigen::Index>(rest));
        return LocalLinearSmoother(x2, k, b).fit(ystar).rss;
    }
    const ParametricFit fit = parametric_null_fit(sample, *null.as_parametric());
    return (sample.y() - fit.fitted).squaredNorm();
}

}  // namespace tvc
