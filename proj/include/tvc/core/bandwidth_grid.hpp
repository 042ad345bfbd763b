#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace tvc {

/// Bandwidth range written as b = z * n^{-gamma}, z in [c_min, c_max].
struct RateForm {
    double gamma = 2.0 / 9.0;
    double c_min = 0.0;
    double c_max = 0.0;
};

/**
 * @brief Strictly increasing bandwidths b_1 < ... < b_M in (0, 1).
 *
 * The optional rate form is what the asymptotic calibration of the averaged
 * statistic needs. A gamma outside [2/9, 1/4) is accepted but recorded in
 * `warnings()`.
 */
class BandwidthGrid {
public:
    explicit BandwidthGrid(std::vector<double> values, std::optional<RateForm> rate = std::nullopt);

    /// Grid {anchor * m : m in multipliers} with rate form attached for sample size n.
    static BandwidthGrid from_anchor(double anchor, std::size_t n,
                                     const std::vector<double>& multipliers = default_multipliers(),
                                     double gamma = 2.0 / 9.0);
    static BandwidthGrid single(double b) { return BandwidthGrid({b}); }
    static std::vector<double> default_multipliers() { return {1.0 / 1.5, 1.0, 1.5}; }

    const std::vector<double>& values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }
    double operator[](std::size_t j) const { return values_[j]; }
    /// Middle bandwidth (index M/2); the anchor for grids built by from_anchor.
    double middle() const noexcept { return values_[values_.size() / 2]; }

    const std::optional<RateForm>& rate() const noexcept { return rate_; }
    const std::vector<std::string>& warnings() const noexcept { return warnings_; }

private:
    std::vector<double> values_;
    std::optional<RateForm> rate_;
    std::vector<std::string> warnings_;
};

}  // namespace tvc
