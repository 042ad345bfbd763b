#pragma once

#include "tvc/core/sample.hpp"
#include "tvc/loclin/null_spec.hpp"

namespace tvc {

/// Sample with the fitted null removed from the response; the new null is beta = 0.
struct PrewhitenResult {
    TimeSeriesSample sample;
    /// Least-squares theta for parametric nulls; empty for a known curve.
    Vector theta_hat;
    NullSpec null = NullSpec::zero();
};

/**
 * @brief Replaces y_i by y_i - x_i' beta0(t_i, theta_hat).
 *
 * Parametric families are fitted by least squares (Error(FamilyFit) when the
 * fit is singular). A simple null is subtracted as given. Component nulls
 * cannot be prewhitened and raise Error(BadInput).
 */
PrewhitenResult prewhiten(const TimeSeriesSample& sample, const NullSpec& family);

}  // namespace tvc
