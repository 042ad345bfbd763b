#pragma once

#include "tvc/core/kernel.hpp"
#include "tvc/core/sample.hpp"

#include <vector>

namespace tvc {

struct GcvResult {
    /// Minimizer of the GCV score over the candidates.
    double b_star = 0.0;
    /// Test bandwidth b_star * n^{-1/45}, slightly undersmoothed.
    double b_test = 0.0;
    std::vector<double> candidates;
    /// Score per candidate; NaN where the local design was singular.
    std::vector<double> scores;
};

/// GCV(b) = RSS_a(b) / (1 - tr(H_b)/n)^2 with tr(H_b) from the exact hat diagonal.
double gcv_score(const TimeSeriesSample& sample, const Kernel& k, double b);

/**
 * @brief Picks the candidate bandwidth with the smallest GCV score.
 *
 * Candidates with a singular local design are skipped. Scores within
 * 1e-12 * sum(y^2) of the minimum count as ties, which go to the largest
 * bandwidth. Throws Error(AllSingular) if no candidate can be fitted and
 * Error(BadInput) for an empty candidate list.
 */
GcvResult gcv_bandwidth(const TimeSeriesSample& sample, const Kernel& k,
                        const std::vector<double>& candidates);

/// count log-spaced bandwidths from lo to hi inclusive.
std::vector<double> log_bandwidth_candidates(double lo = 0.05, double hi = 0.5, int count = 20);

}  // namespace tvc
