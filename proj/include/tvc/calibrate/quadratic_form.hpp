#pragma once

#include "tvc/core/kernel.hpp"
#include "tvc/core/sample.hpp"
#include "tvc/loclin/local_linear.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace tvc {

/// How bootstrap draws of a quadratic form are evaluated.
enum class DrawMode {
    Auto,    ///< Dense when n * dim <= kDenseDrawLimit, banded otherwise
    Dense,   ///< Assemble the (n dim) x (n dim) matrix once, evaluate draws in blocks by GEMM
    Banded,  ///< Per-draw evaluation restricted to the kernel windows
};

inline constexpr std::size_t kDenseDrawLimit = 4000;

/**
 * @brief Gaussian quadratic form Phi(V) = sum_b [2 sum_i w_i' bt_b(t_i) - sum_i (x_i' bt_b(t_i))^2].
 *
 * Here w_i = L_i V_i with L_i = Lambda^{1/2}(t_i) and V_1..V_n i.i.d. standard
 * normal vectors, and bt_b(t_i) is the top block of S_{n,b}(t_i)^{-1} applied
 * to T_b(t_i) = (nb)^{-1} sum_j K((t_j - t_i)/b) (w_j', u_ij w_j')'.
 *
 * A form is a signed sum of such parts; the component version subtracts the
 * part built from the last p - p1 regressors, which reads the last p - p1
 * coordinates of the same V_i.
 *
 * All factorizations and roots are computed at construction; draws only
 * consume fresh normals.
 */
class GaussianQuadraticForm {
public:
    GaussianQuadraticForm(const Matrix& x, const Kernel& k, const std::vector<double>& bandwidths,
                          std::vector<Matrix> roots);

    /// Phi - Phi^(2): the second part uses x^(2), psd_sqrt of the lower-right
    /// block of each Lambda_hat(t_i) and the trailing coordinates of V.
    static GaussianQuadraticForm component(const Matrix& x, std::size_t p1, const Kernel& k,
                                           const std::vector<double>& bandwidths,
                                           const std::vector<Matrix>& lambda_hat);

    std::size_t n() const noexcept { return n_; }
    /// Dimension of each V_i.
    std::size_t dim() const noexcept { return dim_; }

    /// Phi at one draw; v is n x dim with row i = V_i'. Uses only in-window terms.
    double evaluate(const Matrix& v) const;

    /// Symmetric Q with Phi(V) = vec(V)' Q vec(V), vec stacking V_1, V_2, ...
    Matrix dense() const;

    /// Draw b uses the normals of draw_normals(n, dim, derive_seed(seed, {b})).
    /// The result does not depend on `workers`.
    std::vector<double> draws(std::size_t B, std::uint64_t seed, std::size_t workers = 1,
                              DrawMode mode = DrawMode::Auto) const;

    /// n x dim matrix of standard normals filled row by row.
    static Matrix draw_normals(std::size_t n, std::size_t dim, std::uint64_t seed);

private:
    struct Part {
        double sign = 1.0;
        std::size_t offset = 0;
        std::vector<Matrix> roots;
        std::vector<LocalLinearSmoother> smoothers;
    };

    GaussianQuadraticForm() = default;
    static Part make_part(double sign, std::size_t offset, const Matrix& x, const Kernel& k,
                          const std::vector<double>& bandwidths, std::vector<Matrix> roots);
    static double evaluate_part(const Part& part, const Matrix& v);
    static void accumulate_dense(const Part& part, std::size_t dim, Matrix& q);

    std::size_t n_ = 0;
    std::size_t dim_ = 0;
    std::vector<Part> parts_;
};

}  // namespace tvc
