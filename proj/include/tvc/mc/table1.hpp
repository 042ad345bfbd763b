#pragma once

#include "tvc/mc/experiment.hpp"

#include <string>
#include <vector>

namespace tvc::mc {

struct Table1Options {
    std::vector<std::size_t> n_list = {200, 400};
    std::vector<dgp::Scenario> scenarios = {dgp::Scenario::A, dgp::Scenario::B, dgp::Scenario::C,
                                            dgp::Scenario::D};
    std::vector<Method> methods = {Method::Wild, Method::Asym, Method::Iid};
    std::vector<TestKind> kinds = {TestKind::Averaged, TestKind::Single};
    std::vector<double> bandwidths = {0.15, 0.25, 0.35};
    std::size_t replicates = 500;
    std::size_t B = kDefaultBootstrap;
    double alpha = 0.10;
    std::uint64_t seed = 1;
    std::size_t workers = 1;
    Kernel kernel = Kernel::epanechnikov();
};

/// Config of one (n, scenario, kind, bandwidth) block of the table, all methods included.
ExperimentConfig table1_block_config(const Table1Options& options, std::size_t n,
                                     dgp::Scenario scenario, TestKind kind, double bandwidth);

/// Runs every block; the cells are ordered by kind, method, bandwidth, n, scenario.
ExperimentReport reproduce_table1(const Table1Options& options);

/// Rejection rates in percent laid out with tests and methods as rows and
/// (n, scenario) as columns.
std::string format_table1(const ExperimentReport& report);

}  // namespace tvc::mc
