#pragma once

#include "tvc/core/bandwidth_grid.hpp"
#include "tvc/core/kernel.hpp"
#include "tvc/core/sample.hpp"
#include "tvc/loclin/null_spec.hpp"

#include <cstddef>
#include <string_view>
#include <vector>

namespace tvc {

enum class StatisticKind {
    SingleLog,          ///< (n/2) log(RSS_0 / RSS_a)
    ComponentLog,       ///< (n/2) log(RSS_1 / RSS_a)
    AveragedRss,        ///< sum_j (RSS_0 - RSS_a(b_j))
    AveragedComponent,  ///< sum_j (RSS_1(b_j) - RSS_a(b_j))
};

std::string_view to_string(StatisticKind kind);

/// RSS under the null (RSS_0, or RSS_1 for component nulls) and under the alternative at one bandwidth.
struct RssEntry {
    double bandwidth = 0.0;
    double rss_null = 0.0;
    double rss_alt = 0.0;
};

struct StatisticValue {
    StatisticKind kind = StatisticKind::SingleLog;
    double value = 0.0;
    std::size_t n = 0;
    std::vector<RssEntry> ledger;

    std::vector<double> bandwidths() const;
    /// Rebuilds the value from the ledger alone; equals `value` bit for bit.
    double recompute() const;
};

/// lambda_n at bandwidth b. Component nulls give the component statistic.
/// Throws Error(ZeroRss) when the alternative fit is numerically perfect.
StatisticValue glrt_single(const TimeSeriesSample& sample, const NullSpec& null, const Kernel& k,
                           double b);

/// lambda_1n at bandwidth b; the null must be of component kind.
StatisticValue glrt_component(const TimeSeriesSample& sample, const NullSpec& null,
                              const Kernel& k, double b);

/// Grid sum of RSS differences. Fit failures are rethrown with the offending bandwidth attached.
StatisticValue averaged_statistic(const TimeSeriesSample& sample, const NullSpec& null,
                                  const Kernel& k, const BandwidthGrid& grid);

}  // namespace tvc
