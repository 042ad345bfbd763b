#include "tvc/calibrate/quadratic_form.hpp"

#include "tvc/core/errors.hpp"
#include "tvc/core/rng.hpp"
#include "tvc/lrcov/long_run_cov.hpp"

#include <algorithm>

namespace tvc {

namespace {

constexpr std::size_t kDrawBlock = 64;

}  // namespace

GaussianQuadraticForm::Part GaussianQuadraticForm::make_part(double sign, std::size_t offset,
                                                             const Matrix& x, const Kernel& k,
                                                             const std::vector<double>& bandwidths,
                                                             std::vector<Matrix> roots) {
    if (bandwidths.empty()) fail(ErrorCode::BadInput, "quadratic form needs at least one bandwidth");
    if (roots.size() != static_cast<std::size_t>(x.rows())) {
        fail(ErrorCode::BadInput, "one covariance root per observation is required");
    }
    for (const auto& r : roots) {
        if (r.rows() != x.cols() || r.cols() != x.cols()) {
            fail(ErrorCode::BadInput, "covariance roots must be p x p");
        }
    }
    Part part;
    part.sign = sign;
    part.offset = offset;
    part.roots = std::move(roots);
    part.smoothers.reserve(bandwidths.size());
    for (const double b : bandwidths) part.smoothers.emplace_back(x, k, b);
    return part;
}

GaussianQuadraticForm::GaussianQuadraticForm(const Matrix& x, const Kernel& k,
                                             const std::vector<double>& bandwidths,
                                             std::vector<Matrix> roots)
    : n_(static_cast<std::size_t>(x.rows())), dim_(static_cast<std::size_t>(x.cols())) {
    parts_.push_back(make_part(1.0, 0, x, k, bandwidths, std::move(roots)));
}

GaussianQuadraticForm GaussianQuadraticForm::component(const Matrix& x, std::size_t p1,
                                                       const Kernel& k,
                                                       const std::vector<double>& bandwidths,
                                                       const std::vector<Matrix>& lambda_hat) {
    const auto p = static_cast<std::size_t>(x.cols());
    if (p1 < 1 || p1 >= p) {
        fail(ErrorCode::BadInput, "component form needs 1 <= p1 < p");
    }
    const auto p2 = static_cast<Eigen::Index>(p - p1);
    std::vector<Matrix> full(lambda_hat.size());
    std::vector<Matrix> lower(lambda_hat.size());
    for (std::size_t i = 0; i < lambda_hat.size(); ++i) {
        full[i] = psd_sqrt(lambda_hat[i]);
        lower[i] = psd_sqrt(lambda_hat[i].bottomRightCorner(p2, p2));
    }
    GaussianQuadraticForm form;
    form.n_ = static_cast<std::size_t>(x.rows());
    form.dim_ = p;
    form.parts_.push_back(make_part(1.0, 0, x, k, bandwidths, std::move(full)));
    form.parts_.push_back(make_part(-1.0, p1, x.rightCols(p2), k, bandwidths, std::move(lower)));
    return form;
}

double GaussianQuadraticForm::evaluate_part(const Part& part, const Matrix& v) {
    const Eigen::Index q = part.roots.front().rows();
    const auto n = static_cast<std::size_t>(v.rows());
    const auto off = static_cast<Eigen::Index>(part.offset);
    Matrix w(q, static_cast<Eigen::Index>(n));
    for (std::size_t j = 0; j < n; ++j) {
        const auto jj = static_cast<Eigen::Index>(j);
        w.col(jj) = part.roots[j] * v.row(jj).segment(off, q).transpose();
    }
    double phi = 0.0;
    Vector t0(q), t1(q);
    for (const auto& sm : part.smoothers) {
        const Matrix& x = sm.x();
        for (std::size_t i = 0; i < n; ++i) {
            t0.setZero();
            t1.setZero();
            for (std::size_t j = sm.window_begin(i); j < sm.window_end(i); ++j) {
                const double wt = sm.weight(i, j);
                const double u = sm.offset(i, j);
                const auto jj = static_cast<Eigen::Index>(j);
                t0.noalias() += wt * w.col(jj);
                t1.noalias() += (wt * u) * w.col(jj);
            }
            const Matrix& inv = sm.design_inverse(i);
            const Vector beta = inv.topLeftCorner(q, q) * t0 + inv.topRightCorner(q, q) * t1;
            const auto ii = static_cast<Eigen::Index>(i);
            const double fit = x.row(ii).dot(beta);
            phi += 2.0 * w.col(ii).dot(beta) - fit * fit;
        }
    }
    return part.sign * phi;
}

double GaussianQuadraticForm::evaluate(const Matrix& v) const {
    if (static_cast<std::size_t>(v.rows()) != n_ || static_cast<std::size_t>(v.cols()) != dim_) {
        fail(ErrorCode::BadInput, "draw matrix must be n x dim");
    }
    double phi = 0.0;
    for (const auto& part : parts_) phi += evaluate_part(part, v);
    return phi;
}

void GaussianQuadraticForm::accumulate_dense(const Part& part, std::size_t dim, Matrix& q) {
    const Eigen::Index pq = part.roots.front().rows();
    const std::size_t n = part.roots.size();
    const auto d = static_cast<Eigen::Index>(dim);
    const auto off = static_cast<Eigen::Index>(part.offset);
    Matrix c(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n) * d);
    Matrix g(pq, pq);
    for (const auto& sm : part.smoothers) {
        const Matrix& x = sm.x();
        c.setZero();
        for (std::size_t i = 0; i < n; ++i) {
            const auto ii = static_cast<Eigen::Index>(i);
            const Matrix& inv = sm.design_inverse(i);
            const auto e = inv.topLeftCorner(pq, pq);
            const auto f = inv.topRightCorner(pq, pq);
            for (std::size_t j = sm.window_begin(i); j < sm.window_end(i); ++j) {
                const auto jj = static_cast<Eigen::Index>(j);
                g = sm.weight(i, j) * (e + sm.offset(i, j) * f);
                const Matrix gl = g * part.roots[j];
                // Cross term 2 w_i' G_ij w_j, split symmetrically.
                const Matrix cross = part.sign * (part.roots[i] * gl);
                q.block(ii * d + off, jj * d + off, pq, pq) += cross;
                q.block(jj * d + off, ii * d + off, pq, pq) += cross.transpose();
                c.block(ii, jj * d + off, 1, pq) = x.row(ii) * gl;
            }
        }
        q.noalias() -= part.sign * (c.transpose() * c);
    }
}

Matrix GaussianQuadraticForm::dense() const {
    const auto size = static_cast<Eigen::Index>(n_ * dim_);
    Matrix q = Matrix::Zero(size, size);
    for (const auto& part : parts_) accumulate_dense(part, dim_, q);
    return q;
}

Matrix GaussianQuadraticForm::draw_normals(std::size_t n, std::size_t dim, std::uint64_t seed) {
    RngStream rng(seed);
    Matrix v(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(dim));
    for (Eigen::Index i = 0; i < v.rows(); ++i) {
        for (Eigen::Index r = 0; r < v.cols(); ++r) v(i, r) = rng.normal();
    }
    return v;
}

std::vector<double> GaussianQuadraticForm::draws(std::size_t B, std::uint64_t seed,
                                                 std::size_t workers, DrawMode mode) const {
    std::vector<double> out(B);
    const bool dense_mode =
        mode == DrawMode::Dense || (mode == DrawMode::Auto && n_ * dim_ <= kDenseDrawLimit);
    if (!dense_mode) {
        parallel_for(B, workers, [&](std::size_t b) {
            out[b] = evaluate(draw_normals(n_, dim_, derive_seed(seed, {b})));
        });
        return out;
    }
    const Matrix q = dense();
    const auto size = static_cast<Eigen::Index>(n_ * dim_);
    const std::size_t blocks = (B + kDrawBlock - 1) / kDrawBlock;
    parallel_for(blocks, workers, [&](std::size_t blk) {
        const std::size_t first = blk * kDrawBlock;
        const std::size_t count = std::min(kDrawBlock, B - first);
        Matrix vb(size, static_cast<Eigen::Index>(count));
        for (std::size_t c = 0; c < count; ++c) {
            const Matrix v = draw_normals(n_, dim_, derive_seed(seed, {first + c}));
            // Row-major vec: entry (i, r) goes to i * dim + r.
            for (Eigen::Index i = 0; i < v.rows(); ++i) {
                vb.col(static_cast<Eigen::Index>(c)).segment(i * v.cols(), v.cols()) =
                    v.row(i).transpose();
            }
        }
        const Matrix qv = q * vb;
        for (std::size_t c = 0; c < count; ++c) {
            const auto cc = static_cast<Eigen::Index>(c);
            out[first + c] = vb.col(cc).dot(qv.col(cc));
        }
    });
    return out;
}

}  // namespace tvc
