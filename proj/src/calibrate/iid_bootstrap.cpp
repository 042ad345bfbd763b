#include "tvc/calibrate/iid_bootstrap.hpp"

#include "tvc/core/errors.hpp"
#include "tvc/core/rng.hpp"
#include "tvc/glrt/statistic.hpp"
#include "tvc/loclin/local_linear.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>

namespace tvc {

namespace {

constexpr std::size_t kDenseHatLimit = 2000;
constexpr std::size_t kDrawBlock = 64;

/// Squared norms of the residuals of a linear smoother applied column by column.
class ResidualNorms {
public:
    ResidualNorms(const Matrix& x, const Kernel& k, double b, bool dense) : smoother_(x, k, b) {
        if (dense) {
            resid_op_ = Matrix::Identity(x.rows(), x.rows()) - smoother_.hat_matrix();
        }
    }

    Eigen::RowVectorXd operator()(const Matrix& y) const {
        if (resid_op_) return (*resid_op_ * y).colwise().squaredNorm();
        Eigen::RowVectorXd out(y.cols());
        for (Eigen::Index c = 0; c < y.cols(); ++c) {
            out[c] = (y.col(c) - smoother_.smooth(y.col(c))).squaredNorm();
        }
        return out;
    }

    const LocalLinearSmoother& smoother() const { return smoother_; }

private:
    LocalLinearSmoother smoother_;
    std::optional<Matrix> resid_op_;
};

}  // namespace

TestOutcome iid_residual_bootstrap_pvalue(const TimeSeriesSample& sample, const NullSpec& null,
                                          const Kernel& k, const BandwidthGrid& grid,
                                          const IidOptions& options) {
    check_bootstrap_size(options.B);
    null.validate(sample.p());
    const bool single = options.kind == TestKind::Single;
    if (single && grid.size() != 1) {
        fail(ErrorCode::BadInput, "single-bandwidth test needs a grid with one bandwidth");
    }

    TestOutcome out;
    out.method = Method::Iid;
    out.seed = options.seed;
    for (const auto& w : grid.warnings()) out.warnings.push_back(w);
    out.statistic = single ? glrt_single(sample, null, k, grid[0])
                           : averaged_statistic(sample, null, k, grid);

    const std::size_t n = sample.n();
    const auto nn = static_cast<Eigen::Index>(n);
    const bool dense = n <= kDenseHatLimit;
    const double b_mid = grid.middle();

    Vector resid = local_linear_fit(sample, k, b_mid).residuals;
    resid.array() -= resid.mean();

    // Null fitted values and the matching null-RSS rule for a matrix of responses.
    Vector null_fit;
    std::function<Eigen::RowVectorXd(const Matrix&, std::size_t)> null_rss;
    std::vector<ResidualNorms> comp_norms;
    Matrix q_basis;
    Vector offset;
    if (const auto* s = null.as_simple()) {
        null_fit = simple_null_fit(sample, *s);
        null_rss = [&](const Matrix& y, std::size_t) {
            return (y.colwise() - null_fit).colwise().squaredNorm().eval();
        };
    } else if (const auto* c = null.as_component()) {
        offset = component_null_offset(sample, *c);
        const std::size_t rest = sample.p() - c->p1;
        if (rest == 0) {
            null_fit = offset;
            null_rss = [&](const Matrix& y, std::size_t) {
                return (y.colwise() - offset).colwise().squaredNorm().eval();
            };
        } else {
            const Matrix x2 = sample.x().rightCols(static_cast<Eigen::Index>(rest));
            for (const double b : grid.values()) comp_norms.emplace_back(x2, k, b, dense);
            const LocalLinearSmoother mid(x2, k, b_mid);
            null_fit = offset + mid.smooth(sample.y() - offset);
            null_rss = [&](const Matrix& y, std::size_t j) {
                return comp_norms[j](y.colwise() - offset);
            };
        }
    } else {
        const ParametricFit fit = parametric_null_fit(sample, *null.as_parametric());
        null_fit = fit.fitted;
        const ParametricNull& fam = *null.as_parametric();
        const auto q = static_cast<Eigen::Index>(fam.q(sample.p()));
        Matrix design(nn, q);
        for (Eigen::Index i = 0; i < nn; ++i) {
            design.row(i) =
                sample.x().row(i) * fam.basis(sample.t(static_cast<std::size_t>(i)), sample.p());
        }
        Eigen::HouseholderQR<Matrix> qr(design);
        q_basis = qr.householderQ() * Matrix::Identity(nn, q);
        null_rss = [&](const Matrix& y, std::size_t) {
            return (y - q_basis * (q_basis.transpose() * y)).colwise().squaredNorm().eval();
        };
    }

    std::vector<ResidualNorms> alt_norms;
    for (const double b : grid.values()) alt_norms.emplace_back(sample.x(), k, b, dense);

    const std::size_t B = options.B;
    std::vector<double> draws(B);
    const std::size_t blocks = (B + kDrawBlock - 1) / kDrawBlock;
    const double half_n = 0.5 * static_cast<double>(n);
    parallel_for(blocks, options.workers, [&](std::size_t blk) {
        const std::size_t first = blk * kDrawBlock;
        const std::size_t count = std::min(kDrawBlock, B - first);
        Matrix ystar(nn, static_cast<Eigen::Index>(count));
        for (std::size_t c = 0; c < count; ++c) {
            RngStream rng(derive_seed(options.seed, {first + c}));
            for (Eigen::Index i = 0; i < nn; ++i) {
                ystar(i, static_cast<Eigen::Index>(c)) =
                    null_fit[i] + resid[static_cast<Eigen::Index>(rng.index(n))];
            }
        }
        Eigen::RowVectorXd stat = Eigen::RowVectorXd::Zero(static_cast<Eigen::Index>(count));
        std::optional<Eigen::RowVectorXd> shared_null;
        for (std::size_t j = 0; j < alt_norms.size(); ++j) {
            const Eigen::RowVectorXd rss_a = alt_norms[j](ystar);
            Eigen::RowVectorXd rss_0;
            if (comp_norms.empty()) {
                if (!shared_null) shared_null = null_rss(ystar, j);
                rss_0 = *shared_null;
            } else {
                rss_0 = null_rss(ystar, j);
            }
            if (single) {
                stat = half_n * (rss_0.array() / rss_a.array()).log();
            } else {
                stat += rss_0 - rss_a;
            }
        }
        for (std::size_t c = 0; c < count; ++c) draws[first + c] = stat[static_cast<Eigen::Index>(c)];
    });

    std::sort(draws.begin(), draws.end());
    out.p_value = bootstrap_pvalue(out.statistic.value, draws);
    out.bootstrap_draws = std::move(draws);
    return out;
}

}  // namespace tvc
