#include "tvc/mc/table1.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

namespace tvc::mc {

ExperimentConfig table1_block_config(const Table1Options& options, std::size_t n,
                                     dgp::Scenario scenario, TestKind kind, double bandwidth) {
    ExperimentConfig cfg;
    cfg.scenario = scenario;
    cfg.n = n;
    cfg.replicates = options.replicates;
    cfg.methods = options.methods;
    cfg.kind = kind;
    cfg.bandwidth = bandwidth;
    cfg.B = options.B;
    cfg.alpha = options.alpha;
    cfg.seed = options.seed;
    cfg.workers = options.workers;
    cfg.kernel = options.kernel;
    return cfg;
}

ExperimentReport reproduce_table1(const Table1Options& options) {
    const auto start = std::chrono::steady_clock::now();
    ExperimentReport report;
    report.seed = options.seed;
    for (const TestKind kind : options.kinds) {
        for (const double b : options.bandwidths) {
            for (const std::size_t n : options.n_list) {
                for (const dgp::Scenario s : options.scenarios) {
                    ExperimentReport block =
                        run_experiment(table1_block_config(options, n, s, kind, b));
                    for (auto& c : block.cells) report.cells.push_back(std::move(c));
                    for (auto& w : block.warnings) report.warnings.push_back(std::move(w));
                }
            }
        }
    }
    auto order = [&](const CellResult& c) {
        const auto kind_pos = std::find(options.kinds.begin(), options.kinds.end(), c.kind);
        const auto method_pos = std::find(options.methods.begin(), options.methods.end(), c.method);
        return std::make_tuple(kind_pos - options.kinds.begin(),
                               method_pos - options.methods.begin(), c.bandwidth, c.n,
                               static_cast<int>(c.scenario));
    };
    std::stable_sort(report.cells.begin(), report.cells.end(),
                     [&](const CellResult& a, const CellResult& b) { return order(a) < order(b); });
    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

std::string format_table1(const ExperimentReport& report) {
    using Column = std::pair<std::size_t, int>;
    std::set<Column> columns;
    for (const auto& c : report.cells) columns.insert({c.n, static_cast<int>(c.scenario)});

    using RowKey = std::tuple<int, int, double>;
    std::vector<RowKey> rows;
    std::map<std::pair<RowKey, Column>, double> rates;
    for (const auto& c : report.cells) {
        const RowKey key{static_cast<int>(c.kind), static_cast<int>(c.method), c.bandwidth};
        if (std::find(rows.begin(), rows.end(), key) == rows.end()) rows.push_back(key);
        rates[{key, {c.n, static_cast<int>(c.scenario)}}] = c.rate;
    }

    std::ostringstream os;
    os << std::left << std::setw(7) << "Method" << std::setw(11) << "bandwidth";
    for (const auto& [n, s] : columns) {
        std::ostringstream head;
        head << "n=" << n << " (" << static_cast<char>('a' + s) << ")";
        os << std::right << std::setw(13) << head.str();
    }
    os << '\n';
    int current_kind = -1;
    for (const auto& key : rows) {
        const auto& [kind, method, b] = key;
        if (kind != current_kind) {
            os << (static_cast<TestKind>(kind) == TestKind::Averaged ? "Averaged test"
                                                                     : "Single bandwidth test")
               << '\n';
            current_kind = kind;
        }
        std::ostringstream bw;
        bw << std::fixed << std::setprecision(2) << b;
        os << std::left << std::setw(7) << to_string(static_cast<Method>(method)) << std::setw(11)
           << bw.str();
        for (const auto& col : columns) {
            const auto it = rates.find({key, col});
            std::ostringstream cell;
            if (it == rates.end()) {
                cell << "-";
            } else {
                cell << std::fixed << std::setprecision(1) << 100.0 * it->second;
            }
            os << std::right << std::setw(13) << cell.str();
        }
        os << '\n';
    }
    return os.str();
}

}  // namespace tvc::mc
