#include "tvc/loclin/gcv.hpp"

#include "tvc/core/errors.hpp"
#include "tvc/loclin/local_linear.hpp"

#include <cmath>
#include <limits>

namespace tvc {

double gcv_score(const TimeSeriesSample& sample, const Kernel& k, double b) {
    const LocalLinearSmoother smoother(sample.x(), k, b);
    const double rss = smoother.fit(sample.y()).rss;
    const double dof = smoother.hat_diagonal().sum() / static_cast<double>(sample.n());
    const double denom = (1.0 - dof) * (1.0 - dof);
    return rss / denom;
}

GcvResult gcv_bandwidth(const TimeSeriesSample& sample, const Kernel& k,
                        const std::vector<double>& candidates) {
    if (candidates.empty()) fail(ErrorCode::BadInput, "GCV needs at least one candidate bandwidth");
    GcvResult out;
    out.candidates = candidates;
    out.scores.assign(candidates.size(), std::numeric_limits<double>::quiet_NaN());

    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < candidates.size(); ++j) {
        try {
            out.scores[j] = gcv_score(sample, k, candidates[j]);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::SingularDesign) throw;
            continue;
        }
        if (out.scores[j] < best) best = out.scores[j];
    }
    if (!std::isfinite(best)) {
        fail(ErrorCode::AllSingular, "every candidate bandwidth gives a singular local design");
    }
    const double tol = 1e-12 * sample.y().squaredNorm();
    bool found = false;
    for (std::size_t j = 0; j < candidates.size(); ++j) {
        if (std::isnan(out.scores[j]) || out.scores[j] > best + tol) continue;
        if (!found || candidates[j] > out.b_star) out.b_star = candidates[j];
        found = true;
    }
    out.b_test = out.b_star * std::pow(static_cast<double>(sample.n()), -1.0 / 45.0);
    return out;
}

std::vector<double> log_bandwidth_candidates(double lo, double hi, int count) {
    if (!(lo > 0.0 && hi > lo && hi < 1.0) || count < 2) {
        fail(ErrorCode::BadRange, "candidate range must satisfy 0 < lo < hi < 1 with count >= 2");
    }
    std::vector<double> out(static_cast<std::size_t>(count));
    const double step = std::log(hi / lo) / (count - 1);
    for (int j = 0; j < count; ++j) out[static_cast<std::size_t>(j)] = lo * std::exp(step * j);
    out.back() = hi;
    return out;
}

}  // namespace tvc
