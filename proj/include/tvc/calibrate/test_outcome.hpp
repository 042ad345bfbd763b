#pragma once

#include "tvc/core/kernel.hpp"
#include "tvc/core/sample.hpp"
#include "tvc/glrt/statistic.hpp"
#include "tvc/lrcov/long_run_cov.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tvc {

enum class Method { Wild, Asym, Iid };

/// "WILD" | "ASYM" | "IID".
std::string_view to_string(Method m);
/// Case-insensitive inverse of to_string.
Method parse_method(std::string_view text);

/// Averaged grid statistic or the single-bandwidth log statistic.
enum class TestKind { Averaged, Single };

std::string_view to_string(TestKind kind);
TestKind parse_test_kind(std::string_view text);

/// Minimum bootstrap size accepted by the resampling calibrators.
inline constexpr std::size_t kMinBootstrap = 99;
inline constexpr std::size_t kDefaultBootstrap = 1000;

/// Plug-in quantities of the asymptotic calibration (whichever apply).
struct PlugIns {
    std::optional<double> v_hat;           ///< RSS_0 / n
    std::optional<double> avg_tr_h;        ///< grid average of tr H(t_i)
    std::optional<double> avg_tr_h2;       ///< grid average of tr H(t_i)^2
    std::optional<double> sigma_hat;       ///< single-bandwidth scale
    std::optional<double> sigma_star_hat;  ///< averaged-test scale
    std::optional<double> sigma1_hat;      ///< component-test scale (diagnostic)
    std::optional<double> lambda_integral; ///< integral form of the averaged statistic
    std::optional<double> z;               ///< standardized statistic
};

struct TestOutcome {
    StatisticValue statistic;
    Method method = Method::Wild;
    double p_value = 1.0;
    /// Sorted simulated statistics (bootstrap methods only), on the scale of statistic.value.
    std::vector<double> bootstrap_draws;
    PlugIns plugins;
    std::optional<std::uint64_t> seed;
    std::vector<std::string> warnings;
};

/// (1 + #{draws >= observed}) / (B + 1).
double bootstrap_pvalue(double observed, const std::vector<double>& draws);

/// Throws Error(BadB) when B < 99.
void check_bootstrap_size(std::size_t B);

/// Alternative-fit residuals at bandwidth b, then the lag-window estimate with default m and tau.
LongRunCov default_longrun_cov(const TimeSeriesSample& sample, const Kernel& k, double b);

}  // namespace tvc
