#pragma once

#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace tvc {

enum class KernelId { Uniform, Epanechnikov, Triangular, Custom };

/**
 * @brief Symmetric probability density supported on [-s, s], s <= 1.
 *
 * Besides pointwise evaluation the kernel carries the derived quantities the
 * calibration formulas need: the self-convolution K*K (closed form for the
 * built-in kernels; tabulated once on a 4001-point grid over [-2, 2] and
 * linearly interpolated for custom ones), the moments mu_h,
 * Ktilde = K*K - 2K and its squared L2 norm.
 *
 * Instances are immutable and cheap to copy (shared state).
 */
class Kernel {
public:
    static Kernel uniform();
    static Kernel epanechnikov();
    static Kernel triangular();
    /// Throws Error(BadInput) unless `density` is a valid symmetric density on [-support, support].
    static Kernel custom(std::string name, std::function<double(double)> density,
                         double support = 1.0);
    /// "uniform" | "epanechnikov" | "triangular".
    static Kernel from_name(std::string_view name);

    KernelId id() const noexcept;
    const std::string& name() const noexcept;
    double support() const noexcept;

    /// K(u); zero outside the support.
    double operator()(double u) const noexcept {
        const double a = u < 0.0 ? -u : u;
        switch (id_) {
            case KernelId::Uniform: return a <= 1.0 ? 0.5 : 0.0;
            case KernelId::Epanechnikov: return a <= 1.0 ? 0.75 * (1.0 - a * a) : 0.0;
            case KernelId::Triangular: return a <= 1.0 ? 1.0 - a : 0.0;
            case KernelId::Custom: break;
        }
        return custom_eval(u);
    }
    double eval(double u) const noexcept { return (*this)(u); }

    /// (K*K)(u); zero for |u| >= 2 * support.
    double selfconv(double u) const noexcept;
    /// K*K(u) - 2 K(u).
    double ktilde(double u) const noexcept { return selfconv(u) - 2.0 * (*this)(u); }
    /// mu_h = int x^h K(x) dx, absolute quadrature error below 1e-10.
    double moment(int h) const;
    /// int Ktilde(t)^2 dt over the real line (cached at construction).
    double ktilde_l2() const noexcept;

    /// Self-convolution by direct quadrature, bypassing the table.
    double selfconv_exact(double u) const;

    static constexpr int kSelfconvNodes = 4001;

private:
    struct State;
    explicit Kernel(std::shared_ptr<const State> state);
    static Kernel build_builtin(KernelId id, const char* name);
    static void finish(const std::shared_ptr<State>& st, const Kernel& probe);
    double custom_eval(double u) const noexcept;

    std::shared_ptr<const State> state_;
    KernelId id_;
};

double kernel_eval(const Kernel& k, double u);
double kernel_moment(const Kernel& k, int h);
double kernel_selfconv(const Kernel& k, double u);
double ktilde(const Kernel& k, double u);
double ktilde_l2(const Kernel& k);

/// Q(x, y) = int_{c_min}^{x} [2K(y/z) - K*K(y/z)] / z dz.
/// Throws Error(BadRange) unless 0 < c_min <= x.
double q_function(const Kernel& k, double c_min, double x, double y);

/// int Q(c_max, y)^2 dy over the real line, with Q anchored at c_min.
double q_squared_integral(const Kernel& k, double c_min, double c_max);

}  // namespace tvc
