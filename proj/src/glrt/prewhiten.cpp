#include "tvc/glrt/prewhiten.hpp"

#include "tvc/core/errors.hpp"

namespace tvc {

PrewhitenResult prewhiten(const TimeSeriesSample& sample, const NullSpec& family) {
    family.validate(sample.p());
    if (const auto* s = family.as_simple()) {
        if (!s->beta0) return {sample, Vector(), NullSpec::zero()};
        return {sample.with_response(sample.y() - simple_null_fit(sample, *s)), Vector(),
                NullSpec::zero()};
    }
    if (const auto* f = family.as_parametric()) {
        ParametricFit fit = parametric_null_fit(sample, *f);
        return {sample.with_response(sample.y() - fit.fitted), std::move(fit.theta),
                NullSpec::zero()};
    }
    fail(ErrorCode::BadInput, "component nulls cannot be prewhitened");
}

}  // namespace tvc
