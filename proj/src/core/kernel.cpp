#include "tvc/core/kernel.hpp"

#include "tvc/core/errors.hpp"
#include "tvc/core/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace tvc {

struct Kernel::State {
    KernelId id;
    std::string name;
    double support;
    std::function<double(double)> density;  // raw callable, only for custom kernels
    std::vector<double> selfconv_grid;
    double ktilde_l2 = 0.0;
};

namespace {

constexpr double kGridLo = -2.0;
constexpr double kGridStep = 4.0 / (Kernel::kSelfconvNodes - 1);

}  // namespace

Kernel::Kernel(std::shared_ptr<const State> state) : state_(std::move(state)), id_(state_->id) {}

KernelId Kernel::id() const noexcept { return id_; }
const std::string& Kernel::name() const noexcept { return state_->name; }
double Kernel::support() const noexcept { return state_->support; }
double Kernel::ktilde_l2() const noexcept { return state_->ktilde_l2; }

double Kernel::custom_eval(double u) const noexcept {
    if (std::abs(u) > state_->support) return 0.0;
    return state_->density(u);
}

double Kernel::selfconv_exact(double u) const {
    const double s = support();
    const double lo = std::max(-s, u - s);
    const double hi = std::min(s, u + s);
    if (hi <= lo) return 0.0;
    return quad::integrate([&](double v) { return (*this)(v) * (*this)(u - v); }, lo, hi, 1e-12,
                           {0.0, u, u - s, u + s});
}

double Kernel::selfconv(double u) const noexcept {
    const double a = std::abs(u);
    if (a >= 2.0 * support()) return 0.0;
    switch (id_) {
        case KernelId::Uniform: return (2.0 - a) / 4.0;
        case KernelId::Epanechnikov: {
            const double r = 2.0 - a;
            return 3.0 * r * r * r * (a * a + 6.0 * a + 4.0) / 160.0;
        }
        case KernelId::Triangular:
            if (a <= 1.0) return a * a * a / 2.0 - a * a + 2.0 / 3.0;
            return (2.0 - a) * (2.0 - a) * (2.0 - a) / 6.0;
        case KernelId::Custom: break;
    }
    const auto& grid = state_->selfconv_grid;
    const double pos = (a - kGridLo) / kGridStep;
    auto idx = static_cast<std::size_t>(pos);
    if (idx >= grid.size() - 1) return grid.back();
    const double frac = pos - static_cast<double>(idx);
    return grid[idx] + frac * (grid[idx + 1] - grid[idx]);
}

double Kernel::moment(int h) const {
    if (h < 0) fail(ErrorCode::BadRange, "moment order must be nonnegative");
    const double s = support();
    return quad::integrate([&](double x) { return std::pow(x, h) * (*this)(x); }, -s, s, 1e-12,
                           {0.0});
}

// Builds the self-convolution table and the cached constants.
void Kernel::finish(const std::shared_ptr<State>& st, const Kernel& probe) {
    const double s = st->support;
    st->selfconv_grid.resize(Kernel::kSelfconvNodes);
    for (int i = 0; i < Kernel::kSelfconvNodes; ++i) {
        const double u = kGridLo + kGridStep * i;
        st->selfconv_grid[static_cast<std::size_t>(i)] = probe.selfconv_exact(u);
    }
    // Exact (not tabulated) convolution inside the norm integral.
    auto kt = [&](double t) { return probe.selfconv_exact(t) - 2.0 * probe(t); };
    st->ktilde_l2 = 2.0 * quad::integrate([&](double t) { return kt(t) * kt(t); }, 0.0, 2.0 * s,
                                          1e-10, {s});
}

Kernel Kernel::build_builtin(KernelId id, const char* name) {
    auto st = std::make_shared<State>();
    st->id = id;
    st->name = name;
    st->support = 1.0;
    Kernel probe(st);
    finish(st, probe);
    return probe;
}

Kernel Kernel::uniform() {
    static const Kernel k = build_builtin(KernelId::Uniform, "uniform");
    return k;
}

Kernel Kernel::epanechnikov() {
    static const Kernel k = build_builtin(KernelId::Epanechnikov, "epanechnikov");
    return k;
}

Kernel Kernel::triangular() {
    static const Kernel k = build_builtin(KernelId::Triangular, "triangular");
    return k;
}

Kernel Kernel::custom(std::string name, std::function<double(double)> density, double support) {
    if (!density) fail(ErrorCode::BadInput, "custom kernel needs a density callable");
    if (!(support > 0.0 && support <= 1.0)) {
        fail(ErrorCode::BadInput, "custom kernel support must lie in (0, 1]");
    }
    auto st = std::make_shared<State>();
    st->id = KernelId::Custom;
    st->name = std::move(name);
    st->support = support;
    st->density = std::move(density);
    Kernel probe(st);

    // Deterministic probe points covering the support.
    constexpr int kProbes = 1000;
    for (int i = 0; i < kProbes; ++i) {
        const double u = support * (static_cast<double>(i) + 0.5) / kProbes;
        const double left = probe(-u);
        const double right = probe(u);
        if (!std::isfinite(left) || !std::isfinite(right) || left < 0.0 || right < 0.0) {
            fail(ErrorCode::BadInput, "custom kernel must be finite and nonnegative");
        }
        if (std::abs(left - right) > 1e-12 * std::max(1.0, std::abs(right))) {
            fail(ErrorCode::BadInput, "custom kernel must be symmetric");
        }
    }
    const double mass = quad::integrate([&](double u) { return probe(u); }, -support, support,
                                        1e-12, {0.0});
    if (std::abs(mass - 1.0) > 1e-8) {
        fail(ErrorCode::BadInput, "custom kernel must integrate to one (got " +
                                      std::to_string(mass) + ")");
    }
    finish(st, probe);
    return probe;
}

Kernel Kernel::from_name(std::string_view name) {
    if (name == "uniform") return uniform();
    if (name == "epanechnikov") return epanechnikov();
    if (name == "triangular") return triangular();
    fail(ErrorCode::BadInput, "unknown kernel '" + std::string(name) +
                                  "' (expected uniform, epanechnikov or triangular)");
}

double kernel_eval(const Kernel& k, double u) { return k(u); }
double kernel_moment(const Kernel& k, int h) { return k.moment(h); }
double kernel_selfconv(const Kernel& k, double u) { return k.selfconv(u); }
double ktilde(const Kernel& k, double u) { return k.ktilde(u); }
double ktilde_l2(const Kernel& k) { return k.ktilde_l2(); }

double q_function(const Kernel& k, double c_min, double x, double y) {
    if (!(c_min > 0.0) || c_min > x) {
        fail(ErrorCode::BadRange, "q_function requires 0 < c_min <= x");
    }
    if (c_min == x) return 0.0;
    const double s = k.support();
    const double a = std::abs(y);
    auto integrand = [&](double z) {
        const double u = y / z;
        return (2.0 * k(u) - k.selfconv(u)) / z;
    };
    std::vector<double> breaks;
    if (a > 0.0) breaks = {a / s, a / (2.0 * s)};
    return quad::integrate(integrand, c_min, x, 1e-10, breaks);
}

double q_squared_integral(const Kernel& k, double c_min, double c_max) {
    if (!(c_min > 0.0) || c_min > c_max) {
        fail(ErrorCode::BadRange, "q_squared_integral requires 0 < c_min <= c_max");
    }
    if (c_min == c_max) return 0.0;
    const double s = k.support();
    auto q2 = [&](double y) {
        const double q = q_function(k, c_min, c_max, y);
        return q * q;
    };
    return 2.0 * quad::integrate(q2, 0.0, 2.0 * s * c_max, 1e-9,
                                 {s * c_min, 2.0 * s * c_min, s * c_max});
}

}  // namespace tvc
