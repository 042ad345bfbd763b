#pragma once

#include "tvc/calibrate/test_outcome.hpp"
#include "tvc/core/bandwidth_grid.hpp"
#include "tvc/loclin/null_spec.hpp"

#include <cstdint>

namespace tvc {

struct IidOptions {
    std::size_t B = kDefaultBootstrap;
    std::uint64_t seed = 0;
    TestKind kind = TestKind::Averaged;
    std::size_t workers = 1;
};

/**
 * @brief Residual bootstrap baseline that treats the errors as i.i.d.
 *
 * Residuals of the alternative fit at the middle grid bandwidth are centered
 * and resampled with replacement; each draw refits the statistic on
 * y* = (null fitted values) + resampled residuals. For samples up to a few
 * thousand observations the refits use dense hat matrices.
 */
TestOutcome iid_residual_bootstrap_pvalue(const TimeSeriesSample& sample, const NullSpec& null,
                                          const Kernel& k, const BandwidthGrid& grid,
                                          const IidOptions& options = {});

}  // namespace tvc
