#pragma once

#include "tvc/calibrate/test_outcome.hpp"
#include "tvc/core/bandwidth_grid.hpp"
#include "tvc/core/kernel.hpp"
#include "tvc/dgp/scenario.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace tvc::mc {

struct ExperimentConfig {
    dgp::Scenario scenario = dgp::Scenario::A;
    std::size_t n = 400;
    std::size_t replicates = 500;
    std::vector<Method> methods = {Method::Wild};
    TestKind kind = TestKind::Averaged;
    /// Grid anchor for averaged tests, the bandwidth itself for single tests.
    double bandwidth = 0.25;
    std::vector<double> multipliers = BandwidthGrid::default_multipliers();
    double gamma = 2.0 / 9.0;
    std::size_t B = kDefaultBootstrap;
    double alpha = 0.10;
    std::uint64_t seed = 1;
    std::size_t workers = 1;
    Kernel kernel = Kernel::epanechnikov();
    /// Replace the fixed anchor by the GCV test bandwidth of each replicate.
    bool gcv_anchor = false;

    /// Throws Error(BadInput) / Error(BadRange) / Error(BadB) for invalid settings.
    void validate() const;
};

/// Rejection summary for one (method, kind, bandwidth, scenario, n) combination.
struct CellResult {
    dgp::Scenario scenario = dgp::Scenario::A;
    std::size_t n = 0;
    Method method = Method::Wild;
    TestKind kind = TestKind::Averaged;
    double bandwidth = 0.0;
    double alpha = 0.10;
    std::size_t replicates = 0;
    std::size_t failures = 0;
    std::size_t rejections = 0;
    /// rejections / (replicates - failures).
    double rate = 0.0;
    /// sqrt(rate (1 - rate) / valid replicates).
    double standard_error = 0.0;
    /// Time spent in this method summed over replicates.
    double seconds = 0.0;
    /// Per-replicate p-values; NaN marks a failed replicate.
    std::vector<double> p_values;
    std::vector<std::string> failure_messages;
};

struct ExperimentReport {
    std::uint64_t seed = 0;
    double wall_seconds = 0.0;
    std::vector<CellResult> cells;
    std::vector<std::string> warnings;

    /// One aligned row per cell.
    std::string text_table() const;
    /// Header plus one row per cell, without timing columns.
    std::string csv() const;
};

/// Seed of the simulated data of replicate r; shared by all methods and scenarios.
std::uint64_t replicate_data_seed(std::uint64_t master, std::size_t r);
/// Seed of the bootstrap of method m in replicate r.
std::uint64_t replicate_method_seed(std::uint64_t master, std::size_t r, Method m);

/**
 * @brief Simulates `replicates` data sets and calibrates each requested method.
 *
 * Replicates run in parallel on `workers` threads; each is fully determined by
 * its index, so the report does not depend on the worker count. Failed
 * replicates are excluded from the rate; more than 1% failures for any method
 * raises Error(TooManyFailures).
 */
ExperimentReport run_experiment(const ExperimentConfig& cfg);

}  // namespace tvc::mc
