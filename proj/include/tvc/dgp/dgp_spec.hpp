#pragma once

#include "tvc/core/sample.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>

namespace tvc::dgp {

/// Causal filter: consumes the innovation of the current step (after every
/// earlier one, in order) and returns the output at rescaled time t. State
/// such as AR recursions lives inside the closure.
using ScalarFilter = std::function<double(double t, double innovation)>;
using VectorFilter = std::function<Vector(double t, double innovation)>;

/**
 * @brief Locally stationary design x_i = G(t_i, F_i), e_i = H(t_i, G_i) V(t_i, F_i).
 *
 * F_i and G_i are the histories of two independent i.i.d. N(0,1) innovation
 * streams. G and V are both driven by the F stream (this is how endogeneity
 * enters); H is driven by the G stream and should have mean 0 and variance 1.
 * Each member is a factory so every simulation starts from fresh filter state.
 * The first `burn_in` innovations are fed at t = t_1 and discarded.
 */
struct DgpSpec {
    std::size_t p = 1;
    std::function<VectorFilter()> regressor;
    std::function<ScalarFilter()> volatility;
    std::function<ScalarFilter()> shape;
    std::function<Vector(double)> beta;
    std::size_t burn_in = 0;
};

/// Throws Error(BadSize) for n < 20 and Error(BadInput) for an incomplete spec.
TimeSeriesSample simulate_custom(const DgpSpec& spec, std::size_t n, std::uint64_t seed);

}  // namespace tvc::dgp
