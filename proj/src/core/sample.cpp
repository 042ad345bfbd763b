#include "tvc/core/sample.hpp"

#include "tvc/core/errors.hpp"

#include <string>

namespace tvc {

TimeSeriesSample::TimeSeriesSample(Matrix x, Vector y) : x_(std::move(x)), y_(std::move(y)) {
    if (y_.size() == 0) fail(ErrorCode::BadInput, "sample must contain at least one observation");
    if (x_.cols() < 1) fail(ErrorCode::BadInput, "at least one regressor column is required");
    if (x_.rows() != y_.size()) {
        fail(ErrorCode::BadInput, "regressor rows (" + std::to_string(x_.rows()) +
                                      ") do not match response length (" +
                                      std::to_string(y_.size()) + ")");
    }
    if (!x_.allFinite() || !y_.allFinite()) {
        fail(ErrorCode::BadInput, "sample contains non-finite entries");
    }
}

Vector TimeSeriesSample::time_grid() const {
    Vector t(y_.size());
    for (Eigen::Index i = 0; i < t.size(); ++i) t[i] = this->t(static_cast<std::size_t>(i));
    return t;
}

TimeSeriesSample TimeSeriesSample::with_response(Vector y) const {
    return TimeSeriesSample(x_, std::move(y));
}

TimeSeriesSample TimeSeriesSample::with_columns(std::size_t first, std::size_t count) const {
    if (count == 0 || first + count > p()) {
        fail(ErrorCode::BadRange, "column block out of range");
    }
    return TimeSeriesSample(x_.middleCols(static_cast<Eigen::Index>(first),
                                          static_cast<Eigen::Index>(count)),
                            y_);
}

}  // namespace tvc
