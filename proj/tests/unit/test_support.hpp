#pragma once

#include "tvc/core/kernel.hpp"
#include "tvc/core/sample.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace tvc::testing {

/// Small hand-rolled generator for property tests; independent of the library RNG.
class Gen {
public:
    explicit Gen(std::uint64_t seed) : engine_(seed) {}

    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(engine_);
    }
    double normal() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }

    /// Intercept column plus p - 1 well-conditioned random regressors.
    Matrix design(std::size_t n, std::size_t p) {
        Matrix x(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(p));
        for (Eigen::Index i = 0; i < x.rows(); ++i) {
            x(i, 0) = 1.0;
            for (Eigen::Index j = 1; j < x.cols(); ++j) x(i, j) = uniform(0.5, 2.0) + 0.3 * normal();
        }
        return x;
    }

    Vector noise(std::size_t n, double scale = 1.0) {
        Vector e(static_cast<Eigen::Index>(n));
        for (Eigen::Index i = 0; i < e.size(); ++i) e[i] = scale * normal();
        return e;
    }

    TimeSeriesSample sample(std::size_t n, std::size_t p, double scale = 1.0) {
        return TimeSeriesSample(design(n, p), noise(n, scale));
    }

    /// Random symmetric positive semidefinite matrix C C'.
    Matrix psd(std::size_t p) {
        Matrix c(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(p));
        for (Eigen::Index i = 0; i < c.rows(); ++i)
            for (Eigen::Index j = 0; j < c.cols(); ++j) c(i, j) = normal();
        return c * c.transpose();
    }

    Kernel kernel() {
        switch (integer(0, 2)) {
            case 0: return Kernel::uniform();
            case 1: return Kernel::epanechnikov();
            default: return Kernel::triangular();
        }
    }

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
};

/// Composite Simpson rule with `panels` (even) panels; a plain oracle for smooth integrands.
template <class F>
double simpson(F f, double a, double b, int panels = 20000) {
    const double h = (b - a) / panels;
    double s = f(a) + f(b);
    for (int i = 1; i < panels; ++i) s += (i % 2 == 1 ? 4.0 : 2.0) * f(a + i * h);
    return s * h / 3.0;
}

/// Composite three-point Gauss-Legendre on each piece between sorted breakpoints inside (a, b).
/// Nodes stay off the piece ends, so jumps located at breakpoints do not pollute the sum.
template <class F>
double gauss_pieces(F f, double a, double b, std::vector<double> breaks, int panels = 2000) {
    std::vector<double> knots = {a};
    std::sort(breaks.begin(), breaks.end());
    for (double x : breaks) {
        if (x > knots.back() && x < b) knots.push_back(x);
    }
    knots.push_back(b);
    const double r = std::sqrt(0.6);
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
        const double h = (knots[i + 1] - knots[i]) / panels;
        for (int j = 0; j < panels; ++j) {
            const double mid = knots[i] + (j + 0.5) * h;
            const double half = 0.5 * h;
            s += half * (5.0 * f(mid - r * half) + 8.0 * f(mid) + 5.0 * f(mid + r * half)) / 9.0;
        }
    }
    return s;
}

/// Weighted least squares of y on (x_j, x_j u_j) with weights K(u_j), u_j = (t_j - t)/b.
/// Returns the 2p coefficient vector (beta, b * beta').
inline Vector wls_local_linear(const Matrix& x, const Vector& y, const Kernel& k, double b, double t) {
    const Eigen::Index n = x.rows();
    const Eigen::Index p = x.cols();
    std::vector<Eigen::Index> rows;
    for (Eigen::Index j = 0; j < n; ++j) {
        const double u = (static_cast<double>(j + 1) / static_cast<double>(n) - t) / b;
        if (k(u) > 0.0) rows.push_back(j);
    }
    const auto m = static_cast<Eigen::Index>(rows.size());
    Matrix z(m, 2 * p);
    Vector w(m), yy(m);
    for (Eigen::Index r = 0; r < m; ++r) {
        const Eigen::Index j = rows[static_cast<std::size_t>(r)];
        const double u = (static_cast<double>(j + 1) / static_cast<double>(n) - t) / b;
        z.row(r) << x.row(j), u * x.row(j);
        w[r] = std::sqrt(k(u));
        yy[r] = y[j];
    }
    const Matrix zw = w.asDiagonal() * z;
    const Vector yw = w.asDiagonal() * yy;
    return zw.colPivHouseholderQr().solve(yw);
}

}  // namespace tvc::testing
