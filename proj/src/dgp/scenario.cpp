#include "tvc/dgp/scenario.hpp"

#include "tvc/core/errors.hpp"
#include "tvc/core/rng.hpp"

#include <cctype>
#include <cmath>
#include <string>

namespace tvc::dgp {

namespace {

// Stream keys: regressor innovations and independent error innovations.
constexpr std::uint64_t kRegressorStream = 0;
constexpr std::uint64_t kErrorStream = 1;

}  // namespace

Scenario parse_scenario(std::string_view text) {
    if (text.size() == 1) {
        switch (std::toupper(static_cast<unsigned char>(text[0]))) {
            case 'A': return Scenario::A;
            case 'B': return Scenario::B;
            case 'C': return Scenario::C;
            case 'D': return Scenario::D;
            default: break;
        }
    }
    fail(ErrorCode::BadInput, "unknown scenario '" + std::string(text) + "' (expected A-D)");
}

char scenario_letter(Scenario s) noexcept {
    switch (s) {
        case Scenario::A: return 'A';
        case Scenario::B: return 'B';
        case Scenario::C: return 'C';
        case Scenario::D: return 'D';
    }
    return '?';
}

TimeSeriesSample simulate_scenario(Scenario s, std::size_t n, std::uint64_t seed) {
    if (n < kMinSimulationSize) {
        fail(ErrorCode::BadSize, "simulation needs n >= " + std::to_string(kMinSimulationSize));
    }
    RngStream regressor(derive_seed(seed, {kRegressorStream}));
    RngStream error(derive_seed(seed, {kErrorStream}));

    const auto rows = static_cast<Eigen::Index>(n);
    Matrix x(rows, 2);
    x.col(0).setOnes();
    Vector eps(rows);
    const double dn = static_cast<double>(n);

    switch (s) {
        case Scenario::A:
            for (Eigen::Index i = 0; i < rows; ++i) {
                x(i, 1) = regressor.exponential();
                eps[i] = error.normal();
            }
            break;
        case Scenario::B:
            for (Eigen::Index i = 0; i < rows; ++i) {
                x(i, 1) = regressor.exponential();
                eps[i] = x(i, 1) * error.normal();
            }
            break;
        case Scenario::C:
            for (Eigen::Index i = 0; i < rows; ++i) {
                const double t = static_cast<double>(i + 1) / dn;
                x(i, 1) = regressor.student_t(5.0 + 10.0 * t);
                // Underflows to zero for small t; evaluated as written.
                const double scale = std::exp(-1.0 / t) / (100.0 * std::pow(t, 4));
                eps[i] = scale * error.normal();
            }
            break;
        case Scenario::D: {
            double prev_innov = regressor.normal();
            double e = 0.0;
            for (std::size_t k = 0; k < kArBurnIn; ++k) e = 0.5 * e + error.normal();
            for (Eigen::Index i = 0; i < rows; ++i) {
                const double innov = regressor.normal();
                x(i, 1) = innov * prev_innov;
                prev_innov = innov;
                e = 0.5 * e + error.normal();
                eps[i] = e;
            }
            break;
        }
    }
    return TimeSeriesSample(std::move(x), std::move(eps));
}

}  // namespace tvc::dgp
