#include "tvc/mc/experiment.hpp"

#include "tvc/calibrate/asymptotic.hpp"
#include "tvc/calibrate/iid_bootstrap.hpp"
#include "tvc/calibrate/wild_bootstrap.hpp"
#include "tvc/core/errors.hpp"
#include "tvc/core/rng.hpp"
#include "tvc/loclin/gcv.hpp"
#include "tvc/loclin/local_linear.hpp"

#include <chrono>
#include <cmath>
#include <iomanip>
#include <limits>
#include <optional>
#include <sstream>

namespace tvc::mc {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

struct ReplicateResult {
    std::vector<double> p_values;
    std::vector<double> seconds;
    std::vector<std::string> errors;
};

ReplicateResult run_replicate(const ExperimentConfig& cfg, std::size_t r) {
    const std::size_t methods = cfg.methods.size();
    ReplicateResult out;
    out.p_values.assign(methods, std::numeric_limits<double>::quiet_NaN());
    out.seconds.assign(methods, 0.0);
    out.errors.assign(methods, std::string());

    std::optional<TimeSeriesSample> sample;
    std::optional<BandwidthGrid> grid;
    std::optional<LongRunCov> lrcov;
    std::string setup_error;
    try {
        sample = dgp::simulate_scenario(cfg.scenario, cfg.n, replicate_data_seed(cfg.seed, r));
        double anchor = cfg.bandwidth;
        if (cfg.gcv_anchor) {
            anchor = gcv_bandwidth(*sample, cfg.kernel, log_bandwidth_candidates()).b_test;
        }
        grid = cfg.kind == TestKind::Averaged
                   ? BandwidthGrid::from_anchor(anchor, cfg.n, cfg.multipliers, cfg.gamma)
                   : BandwidthGrid::single(anchor);
    } catch (const std::exception& e) {
        setup_error = e.what();
    }

    const NullSpec null = NullSpec::zero();
    for (std::size_t m = 0; m < methods; ++m) {
        if (!setup_error.empty()) {
            out.errors[m] = setup_error;
            continue;
        }
        const Method method = cfg.methods[m];
        const auto start = Clock::now();
        try {
            if (method != Method::Iid && !lrcov) {
                lrcov = default_longrun_cov(*sample, cfg.kernel, grid->middle());
            }
            const std::uint64_t seed = replicate_method_seed(cfg.seed, r, method);
            TestOutcome outcome;
            switch (method) {
                case Method::Wild:
                    outcome = wild_bootstrap_pvalue(*sample, null, cfg.kernel, *grid, *lrcov,
                                                    {cfg.B, seed, cfg.kind, 1, DrawMode::Auto});
                    break;
                case Method::Asym:
                    outcome = cfg.kind == TestKind::Averaged
                                  ? asym_pvalue_averaged(*sample, null, cfg.kernel, *grid, *lrcov)
                                  : asym_pvalue_single(*sample, null, cfg.kernel, (*grid)[0], *lrcov);
                    break;
                case Method::Iid:
                    outcome = iid_residual_bootstrap_pvalue(*sample, null, cfg.kernel, *grid,
                                                            {cfg.B, seed, cfg.kind, 1});
                    break;
            }
            out.p_values[m] = outcome.p_value;
        } catch (const std::exception& e) {
            out.errors[m] = e.what();
        }
        out.seconds[m] = seconds_since(start);
    }
    return out;
}

std::string format_double(double v, int precision) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(precision) << v;
    return os.str();
}

}  // namespace

void ExperimentConfig::validate() const {
    if (replicates < 1) fail(ErrorCode::BadInput, "replicates must be at least 1");
    if (!(alpha > 0.0 && alpha < 1.0)) fail(ErrorCode::BadRange, "alpha must lie in (0, 1)");
    if (methods.empty()) fail(ErrorCode::BadInput, "at least one method is required");
    if (multipliers.empty()) fail(ErrorCode::BadInput, "grid multipliers must be nonempty");
    for (std::size_t j = 0; j < multipliers.size(); ++j) {
        if (!(multipliers[j] > 0.0) || (j > 0 && !(multipliers[j] > multipliers[j - 1]))) {
            fail(ErrorCode::BadInput, "grid multipliers must be positive and increasing");
        }
    }
    if (!(bandwidth > 0.0 && bandwidth < 1.0)) {
        fail(ErrorCode::BadRange, "bandwidth must lie in (0, 1)");
    }
    if (n < dgp::kMinSimulationSize) fail(ErrorCode::BadSize, "n must be at least 20");
    for (const Method m : methods) {
        if (m != Method::Asym) check_bootstrap_size(B);
    }
}

std::uint64_t replicate_data_seed(std::uint64_t master, std::size_t r) {
    return derive_seed(master, {static_cast<std::uint64_t>(r)});
}

std::uint64_t replicate_method_seed(std::uint64_t master, std::size_t r, Method m) {
    return derive_seed(master, {static_cast<std::uint64_t>(r),
                                static_cast<std::uint64_t>(m) + 1});
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    const auto start = Clock::now();
    std::vector<ReplicateResult> results(cfg.replicates);
    parallel_for(cfg.replicates, cfg.workers,
                 [&](std::size_t r) { results[r] = run_replicate(cfg, r); });

    ExperimentReport report;
    report.seed = cfg.seed;
    for (std::size_t m = 0; m < cfg.methods.size(); ++m) {
        CellResult cell;
        cell.scenario = cfg.scenario;
        cell.n = cfg.n;
        cell.method = cfg.methods[m];
        cell.kind = cfg.kind;
        cell.bandwidth = cfg.bandwidth;
        cell.alpha = cfg.alpha;
        cell.replicates = cfg.replicates;
        cell.p_values.resize(cfg.replicates);
        for (std::size_t r = 0; r < cfg.replicates; ++r) {
            const auto& res = results[r];
            cell.p_values[r] = res.p_values[m];
            cell.seconds += res.seconds[m];
            if (!res.errors[m].empty()) {
                ++cell.failures;
                cell.failure_messages.push_back("replicate " + std::to_string(r) + ": " +
                                                res.errors[m]);
            } else if (res.p_values[m] <= cfg.alpha) {
                ++cell.rejections;
            }
        }
        if (static_cast<double>(cell.failures) > 0.01 * static_cast<double>(cfg.replicates)) {
            fail(ErrorCode::TooManyFailures,
                 std::string(to_string(cell.method)) + ": " + std::to_string(cell.failures) +
                     " of " + std::to_string(cfg.replicates) + " replicates failed; first: " +
                     cell.failure_messages.front());
        }
        if (cell.failures > 0) {
            report.warnings.push_back(std::string(to_string(cell.method)) + ": " +
                                      std::to_string(cell.failures) +
                                      " replicate(s) failed and were excluded");
        }
        const std::size_t valid = cfg.replicates - cell.failures;
        cell.rate = static_cast<double>(cell.rejections) / static_cast<double>(valid);
        cell.standard_error = std::sqrt(cell.rate * (1.0 - cell.rate) / static_cast<double>(valid));
        report.cells.push_back(std::move(cell));
    }
    report.wall_seconds = seconds_since(start);
    return report;
}

std::string ExperimentReport::text_table() const {
    std::ostringstream os;
    os << std::left << std::setw(7) << "method" << std::setw(10) << "test" << std::setw(10)
       << "bandwidth" << std::setw(10) << "scenario" << std::setw(7) << "n" << std::right
       << std::setw(9) << "rate(%)" << std::setw(8) << "se(%)" << std::setw(10) << "failures"
       << std::setw(11) << "seconds" << '\n';
    for (const auto& c : cells) {
        os << std::left << std::setw(7) << to_string(c.method) << std::setw(10) << to_string(c.kind)
           << std::setw(10) << format_double(c.bandwidth, 3) << std::setw(10)
           << dgp::scenario_letter(c.scenario) << std::setw(7) << c.n << std::right
           << std::setw(9) << format_double(100.0 * c.rate, 1) << std::setw(8)
           << format_double(100.0 * c.standard_error, 2) << std::setw(10) << c.failures
           << std::setw(11) << format_double(c.seconds, 1) << '\n';
    }
    return os.str();
}

std::string ExperimentReport::csv() const {
    std::ostringstream os;
    os << "method,test,bandwidth,scenario,n,alpha,replicates,failures,rejections,rate,se\n";
    os << std::setprecision(10);
    for (const auto& c : cells) {
        os << to_string(c.method) << ',' << to_string(c.kind) << ',' << c.bandwidth << ','
           << dgp::scenario_letter(c.scenario) << ',' << c.n << ',' << c.alpha << ','
           << c.replicates << ',' << c.failures << ',' << c.rejections << ',' << c.rate << ','
           << c.standard_error << '\n';
    }
    return os.str();
}

}  // namespace tvc::mc
