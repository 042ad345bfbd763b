#include "tvc/dgp/dgp_spec.hpp"

#include "tvc/core/errors.hpp"
#include "tvc/core/rng.hpp"
#include "tvc/dgp/scenario.hpp"

#include <string>

namespace tvc::dgp {

TimeSeriesSample simulate_custom(const DgpSpec& spec, std::size_t n, std::uint64_t seed) {
    if (n < kMinSimulationSize) {
        fail(ErrorCode::BadSize, "simulation needs n >= " + std::to_string(kMinSimulationSize));
    }
    if (spec.p < 1 || !spec.regressor || !spec.volatility || !spec.shape || !spec.beta) {
        fail(ErrorCode::BadInput, "DgpSpec needs p >= 1 and all of regressor, volatility, shape, beta");
    }
    RngStream f_stream(derive_seed(seed, {0}));
    RngStream g_stream(derive_seed(seed, {1}));
    VectorFilter g_filter = spec.regressor();
    ScalarFilter v_filter = spec.volatility();
    ScalarFilter h_filter = spec.shape();

    const double dn = static_cast<double>(n);
    const double t_first = 1.0 / dn;
    for (std::size_t k = 0; k < spec.burn_in; ++k) {
        const double f = f_stream.normal();
        const double g = g_stream.normal();
        g_filter(t_first, f);
        v_filter(t_first, f);
        h_filter(t_first, g);
    }

    const auto rows = static_cast<Eigen::Index>(n);
    const auto cols = static_cast<Eigen::Index>(spec.p);
    Matrix x(rows, cols);
    Vector y(rows);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const double t = static_cast<double>(i + 1) / dn;
        const double f = f_stream.normal();
        const double g = g_stream.normal();
        const Vector xi = g_filter(t, f);
        if (xi.size() != cols) fail(ErrorCode::BadInput, "regressor filter returned wrong dimension");
        const double eps = h_filter(t, g) * v_filter(t, f);
        const Vector b = spec.beta(t);
        if (b.size() != cols) fail(ErrorCode::BadInput, "beta returned wrong dimension");
        x.row(i) = xi.transpose();
        y[i] = xi.dot(b) + eps;
    }
    return TimeSeriesSample(std::move(x), std::move(y));
}

}  // namespace tvc::dgp
