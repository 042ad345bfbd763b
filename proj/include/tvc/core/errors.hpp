#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace tvc {

enum class ErrorCode {
    BadRange,
    BadSize,
    BadInput,
    SingularDesign,
    AllSingular,
    BadWindow,
    EmptyWeight,
    NotSymmetric,
    ZeroRss,
    FamilyFit,
    BadB,
    NoRateForm,
    NonPositive,
    TooManyFailures,
    Parse,
};

std::string_view to_string(ErrorCode code);

/// Single exception type for the library; `code()` identifies the failure.
/// Singular designs carry the offending time point and bandwidth.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message);

    ErrorCode code() const noexcept { return code_; }

    std::optional<double> time_point;
    std::optional<double> bandwidth;

private:
    ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace tvc
