#include "tvc/lrcov/long_run_cov.hpp"

#include "tvc/core/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>

namespace tvc {

namespace {

void check_inputs(const TimeSeriesSample& sample, const Vector& residuals, std::size_t m,
                  double tau) {
    if (static_cast<std::size_t>(residuals.size()) != sample.n()) {
        fail(ErrorCode::BadInput, "residual vector length does not match the sample");
    }
    if (2 * m + 1 > sample.n()) {
        fail(ErrorCode::BadWindow, "lag window 2m+1 = " + std::to_string(2 * m + 1) +
                                       " exceeds n = " + std::to_string(sample.n()));
    }
    if (!(tau > 0.0 && tau < 1.0)) {
        fail(ErrorCode::BadRange, "tau must lie in (0, 1)");
    }
}

Matrix weighted_average(const std::vector<Matrix>& delta, const Kernel& k, double tau, double t,
                        double dn) {
    const std::size_t n = delta.size();
    const auto p = delta.front().rows();
    // Only grid points with |t_j - t| <= tau * support can carry weight.
    const double reach = tau * k.support();
    const double lo_t = (t - reach) * dn - 1.0;
    const double hi_t = (t + reach) * dn;
    const std::size_t lo = lo_t <= 0.0 ? 0 : static_cast<std::size_t>(std::floor(lo_t));
    const std::size_t hi =
        std::min(n, hi_t <= 0.0 ? std::size_t{0} : static_cast<std::size_t>(std::ceil(hi_t)) + 1);
    Matrix acc = Matrix::Zero(p, p);
    double total = 0.0;
    for (std::size_t j = lo; j < hi; ++j) {
        const double w = k((static_cast<double>(j + 1) / dn - t) / tau);
        if (w == 0.0) continue;
        acc.noalias() += w * delta[j];
        total += w;
    }
    if (!(total > 0.0)) {
        fail(ErrorCode::EmptyWeight, "no kernel weight at t = " + std::to_string(t) +
                                         " for tau = " + std::to_string(tau));
    }
    return acc / total;
}

}  // namespace

std::size_t default_lrcov_window(std::size_t n) {
    return static_cast<std::size_t>(std::floor(std::pow(static_cast<double>(n), 2.0 / 7.0)));
}

double default_lrcov_tau(std::size_t n) { return std::pow(static_cast<double>(n), -1.0 / 7.0); }

std::vector<Matrix> lrcov_blocks(const TimeSeriesSample& sample, const Vector& residuals,
                                 std::size_t m) {
    const std::size_t n = sample.n();
    const auto p = static_cast<Eigen::Index>(sample.p());
    Matrix prefix = Matrix::Zero(static_cast<Eigen::Index>(n) + 1, p);
    for (std::size_t i = 0; i < n; ++i) {
        const auto ii = static_cast<Eigen::Index>(i);
        prefix.row(ii + 1) = prefix.row(ii) + residuals[ii] * sample.x().row(ii);
    }
    const double denom = static_cast<double>(2 * m + 1);
    std::vector<Matrix> delta(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t lo = i > m ? i - m : 0;
        const std::size_t hi = std::min(n, i + m + 1);
        const Vector s = (prefix.row(static_cast<Eigen::Index>(hi)) -
                          prefix.row(static_cast<Eigen::Index>(lo)))
                             .transpose();
        delta[i] = s * s.transpose() / denom;
    }
    return delta;
}

LongRunCov longrun_cov(const TimeSeriesSample& sample, const Vector& residuals, std::size_t m,
                       double tau, const Kernel& k) {
    check_inputs(sample, residuals, m, tau);
    const std::size_t n = sample.n();
    const double dn = static_cast<double>(n);
    const std::vector<Matrix> delta = lrcov_blocks(sample, residuals, m);

    LongRunCov out;
    out.m = m;
    out.tau = tau;
    out.lambda_hat.resize(n);
    out.sqrt.resize(n);
    out.min_eigenvalue = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        Matrix lam = weighted_average(delta, k, tau, sample.t(i), dn);
        lam = 0.5 * (lam + lam.transpose()).eval();
        Eigen::SelfAdjointEigenSolver<Matrix> eig(lam);
        out.min_eigenvalue = std::min(out.min_eigenvalue, eig.eigenvalues().minCoeff());
        const Vector root = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
        out.sqrt[i] = eig.eigenvectors() * root.asDiagonal() * eig.eigenvectors().transpose();
        out.lambda_hat[i] = std::move(lam);
    }
    return out;
}

LongRunCov longrun_cov(const TimeSeriesSample& sample, const Vector& residuals, const Kernel& k) {
    return longrun_cov(sample, residuals, default_lrcov_window(sample.n()),
                       default_lrcov_tau(sample.n()), k);
}

Matrix longrun_cov_at(const TimeSeriesSample& sample, const Vector& residuals, std::size_t m,
                      double tau, const Kernel& k, double t) {
    check_inputs(sample, residuals, m, tau);
    const std::vector<Matrix> delta = lrcov_blocks(sample, residuals, m);
    const Matrix lam = weighted_average(delta, k, tau, t, static_cast<double>(sample.n()));
    return 0.5 * (lam + lam.transpose());
}

Matrix psd_sqrt(const Matrix& a) {
    if (a.rows() != a.cols()) fail(ErrorCode::NotSymmetric, "matrix is not square");
    if ((a - a.transpose()).cwiseAbs().maxCoeff() > 1e-8) {
        fail(ErrorCode::NotSymmetric, "matrix is not symmetric within 1e-8");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (a + a.transpose()));
    const Vector root = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return eig.eigenvectors() * root.asDiagonal() * eig.eigenvectors().transpose();
}

}  // namespace tvc
