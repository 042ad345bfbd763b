#include "tvc/core/bandwidth_grid.hpp"

#include "tvc/core/errors.hpp"

#include <cmath>

namespace tvc {

BandwidthGrid::BandwidthGrid(std::vector<double> values, std::optional<RateForm> rate)
    : values_(std::move(values)), rate_(rate) {
    if (values_.empty()) fail(ErrorCode::BadInput, "bandwidth grid must not be empty");
    for (std::size_t j = 0; j < values_.size(); ++j) {
        const double b = values_[j];
        if (!(b > 0.0 && b < 1.0)) {
            fail(ErrorCode::BadRange, "bandwidth " + std::to_string(b) + " outside (0, 1)");
        }
        if (j > 0 && !(b > values_[j - 1])) {
            fail(ErrorCode::BadInput, "bandwidth grid must be strictly increasing");
        }
    }
    if (rate_) {
        if (!(rate_->c_min > 0.0) || !(rate_->c_min < rate_->c_max)) {
            fail(ErrorCode::BadRange, "rate form requires 0 < c_min < c_max");
        }
        if (rate_->gamma < 2.0 / 9.0 || rate_->gamma >= 0.25) {
            warnings_.push_back("rate exponent gamma = " + std::to_string(rate_->gamma) +
                                " lies outside [2/9, 1/4)");
        }
    }
}

BandwidthGrid BandwidthGrid::from_anchor(double anchor, std::size_t n,
                                         const std::vector<double>& multipliers, double gamma) {
    if (multipliers.empty()) fail(ErrorCode::BadInput, "no grid multipliers");
    std::vector<double> values;
    values.reserve(multipliers.size());
    for (double m : multipliers) {
        if (!(m > 0.0)) fail(ErrorCode::BadInput, "grid multipliers must be positive");
        values.push_back(anchor * m);
    }
    std::optional<RateForm> rate;
    if (values.size() > 1) {
        const double scale = std::pow(static_cast<double>(n), gamma);
        rate = RateForm{gamma, values.front() * scale, values.back() * scale};
    }
    return BandwidthGrid(std::move(values), rate);
}

}  // namespace tvc
