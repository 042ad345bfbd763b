#include "tvc/core/errors.hpp"

namespace tvc {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::BadRange: return "ErrBadRange";
        case ErrorCode::BadSize: return "ErrBadSize";
        case ErrorCode::BadInput: return "ErrBadInput";
        case ErrorCode::SingularDesign: return "ErrSingularDesign";
        case ErrorCode::AllSingular: return "ErrAllSingular";
        case ErrorCode::BadWindow: return "ErrBadWindow";
        case ErrorCode::EmptyWeight: return "ErrEmptyWeight";
        case ErrorCode::NotSymmetric: return "ErrNotSymmetric";
        case ErrorCode::ZeroRss: return "ErrZeroRss";
        case ErrorCode::FamilyFit: return "ErrFamilyFit";
        case ErrorCode::BadB: return "ErrBadB";
        case ErrorCode::NoRateForm: return "ErrNoRateForm";
        case ErrorCode::NonPositive: return "ErrNonpositive";
        case ErrorCode::TooManyFailures: return "ErrTooManyFailures";
        case ErrorCode::Parse: return "ErrParse";
    }
    return "ErrUnknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

void fail(ErrorCode code, const std::string& message) { throw Error(code, message); }

}  // namespace tvc
