#include "tvc/calibrate/wild_bootstrap.hpp"

#include "tvc/core/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tvc {

namespace {

StatisticValue observed_statistic(const TimeSeriesSample& sample, const NullSpec& null,
                                  const Kernel& k, const BandwidthGrid& grid, TestKind kind) {
    if (kind == TestKind::Single) {
        if (grid.size() != 1) {
            fail(ErrorCode::BadInput, "single-bandwidth test needs a grid with one bandwidth");
        }
        return glrt_single(sample, null, k, grid[0]);
    }
    return averaged_statistic(sample, null, k, grid);
}

}  // namespace

TestOutcome wild_bootstrap_pvalue(const TimeSeriesSample& sample, const NullSpec& null,
                                  const Kernel& k, const BandwidthGrid& grid,
                                  const LongRunCov& lrcov, const WildOptions& options) {
    check_bootstrap_size(options.B);
    null.validate(sample.p());
    if (lrcov.n() != sample.n()) {
        fail(ErrorCode::BadInput, "long-run covariance does not match the sample size");
    }

    TestOutcome out;
    out.method = Method::Wild;
    out.seed = options.seed;
    for (const auto& w : grid.warnings()) out.warnings.push_back(w);
    if (null.kind() == NullKind::Parametric) {
        out.warnings.push_back(
            "parametric null was not prewhitened; the bootstrap form assumes beta = 0 under the null");
    }
    out.statistic = observed_statistic(sample, null, k, grid, options.kind);

    const auto* comp = null.as_component();
    const bool use_component = comp != nullptr && comp->p1 < sample.p();
    const GaussianQuadraticForm form =
        use_component
            ? GaussianQuadraticForm::component(sample.x(), comp->p1, k, grid.values(),
                                               lrcov.lambda_hat)
            : GaussianQuadraticForm(sample.x(), k, grid.values(), lrcov.sqrt);

    std::vector<double> draws = form.draws(options.B, options.seed, options.workers, options.mode);
    if (options.kind == TestKind::Single) {
        const double rss0 = out.statistic.ledger.front().rss_null;
        const double half_n = 0.5 * static_cast<double>(sample.n());
        for (double& d : draws) {
            d = d >= rss0 ? std::numeric_limits<double>::infinity()
                          : -half_n * std::log1p(-d / rss0);
        }
    }
    std::sort(draws.begin(), draws.end());
    out.p_value = bootstrap_pvalue(out.statistic.value, draws);
    out.bootstrap_draws = std::move(draws);
    return out;
}

TestOutcome wild_bootstrap_component_pvalue(const TimeSeriesSample& sample, const NullSpec& null,
                                            const Kernel& k, const BandwidthGrid& grid,
                                            const LongRunCov& lrcov,
                                            const WildOptions& options) {
    const auto* comp = null.as_component();
    if (comp == nullptr) fail(ErrorCode::BadInput, "component bootstrap needs a component null");
    if (comp->p1 < 1 || comp->p1 >= sample.p()) {
        fail(ErrorCode::BadInput, "component bootstrap needs 1 <= p1 < p");
    }
    return wild_bootstrap_pvalue(sample, null, k, grid, lrcov, options);
}

}  // namespace tvc
