#include "tvc/glrt/statistic.hpp"

#include "tvc/core/errors.hpp"
#include "tvc/loclin/local_linear.hpp"

#include <cmath>
#include <sstream>

namespace tvc {

namespace {

double log_statistic(std::size_t n, double rss_null, double rss_alt) {
    return 0.5 * static_cast<double>(n) * std::log(rss_null / rss_alt);
}

void check_alt_rss(const TimeSeriesSample& sample, double rss_alt, double b) {
    // Residuals at rounding level mean the alternative interpolates the data.
    if (rss_alt <= 1e-24 * sample.y().squaredNorm() || rss_alt == 0.0) {
        std::ostringstream msg;
        msg << "alternative fit at bandwidth " << b
            << " has zero residual sum of squares; the statistic is undefined";
        fail(ErrorCode::ZeroRss, msg.str());
    }
}

RssEntry rss_pair(const TimeSeriesSample& sample, const NullSpec& null, const Kernel& k, double b) {
    RssEntry e;
    e.bandwidth = b;
    e.rss_alt = local_linear_fit(sample, k, b).rss;
    e.rss_null = rss_null(sample, null, k, b);
    return e;
}

}  // namespace

std::string_view to_string(StatisticKind kind) {
    switch (kind) {
        case StatisticKind::SingleLog: return "single_log";
        case StatisticKind::ComponentLog: return "component_log";
        case StatisticKind::AveragedRss: return "averaged_rss";
        case StatisticKind::AveragedComponent: return "averaged_component";
    }
    return "unknown";
}

std::vector<double> StatisticValue::bandwidths() const {
    std::vector<double> out;
    out.reserve(ledger.size());
    for (const auto& e : ledger) out.push_back(e.bandwidth);
    return out;
}

double StatisticValue::recompute() const {
    switch (kind) {
        case StatisticKind::SingleLog:
        case StatisticKind::ComponentLog:
            if (ledger.size() != 1) fail(ErrorCode::BadInput, "log statistic needs one ledger entry");
            return log_statistic(n, ledger[0].rss_null, ledger[0].rss_alt);
        case StatisticKind::AveragedRss:
        case StatisticKind::AveragedComponent: {
            double sum = 0.0;
            for (const auto& e : ledger) sum += e.rss_null - e.rss_alt;
            return sum;
        }
    }
    return 0.0;
}

StatisticValue glrt_single(const TimeSeriesSample& sample, const NullSpec& null, const Kernel& k,
                           double b) {
    null.validate(sample.p());
    StatisticValue out;
    out.kind = null.kind() == NullKind::Component ? StatisticKind::ComponentLog
                                                  : StatisticKind::SingleLog;
    out.n = sample.n();
    out.ledger.push_back(rss_pair(sample, null, k, b));
    check_alt_rss(sample, out.ledger[0].rss_alt, b);
    out.value = out.recompute();
    return out;
}

StatisticValue glrt_component(const TimeSeriesSample& sample, const NullSpec& null,
                              const Kernel& k, double b) {
    if (null.kind() != NullKind::Component) {
        fail(ErrorCode::BadInput, "component statistic needs a component null");
    }
    return glrt_single(sample, null, k, b);
}

StatisticValue averaged_statistic(const TimeSeriesSample& sample, const NullSpec& null,
                                  const Kernel& k, const BandwidthGrid& grid) {
    null.validate(sample.p());
    StatisticValue out;
    out.kind = null.kind() == NullKind::Component ? StatisticKind::AveragedComponent
                                                  : StatisticKind::AveragedRss;
    out.n = sample.n();
    for (const double b : grid.values()) {
        try {
            out.ledger.push_back(rss_pair(sample, null, k, b));
        } catch (const Error& e) {
            std::ostringstream msg;
            msg << e.what() << " [grid bandwidth b_j = " << b << "]";
            Error annotated(e.code(), msg.str());
            annotated.time_point = e.time_point;
            annotated.bandwidth = b;
            throw annotated;
        }
    }
    out.value = out.recompute();
    return out;
}

}  // namespace tvc
