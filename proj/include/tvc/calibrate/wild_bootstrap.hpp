#pragma once

#include "tvc/calibrate/quadratic_form.hpp"
#include "tvc/calibrate/test_outcome.hpp"
#include "tvc/core/bandwidth_grid.hpp"
#include "tvc/loclin/null_spec.hpp"

#include <cstdint>

namespace tvc {

struct WildOptions {
    std::size_t B = kDefaultBootstrap;
    std::uint64_t seed = 0;
    TestKind kind = TestKind::Averaged;
    std::size_t workers = 1;
    DrawMode mode = DrawMode::Auto;
};

/**
 * @brief Robust wild bootstrap: compares the observed statistic with draws of the
 * Gaussian quadratic form built from Lambda_hat^{1/2}.
 *
 * Averaged kind: observed sum_j (RSS_0 - RSS_a(b_j)) against Phi(grid).
 * Single kind (grid of one bandwidth): observed lambda_n against
 * -(n/2) log(1 - Phi/RSS_0), the same comparison on the log scale.
 * Component nulls are routed to the component form. Errors: BadB for B < 99,
 * singular designs propagate.
 */
TestOutcome wild_bootstrap_pvalue(const TimeSeriesSample& sample, const NullSpec& null,
                                  const Kernel& k, const BandwidthGrid& grid,
                                  const LongRunCov& lrcov, const WildOptions& options = {});

/// Component null only: draws of Phi - Phi^(2) sharing the same V_i.
TestOutcome wild_bootstrap_component_pvalue(const TimeSeriesSample& sample, const NullSpec& null,
                                            const Kernel& k, const BandwidthGrid& grid,
                                            const LongRunCov& lrcov,
                                            const WildOptions& options = {});

}  // namespace tvc
