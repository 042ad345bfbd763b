#include "test_support.hpp"

#include "tvc/core/errors.hpp"
#include "tvc/core/rng.hpp"
#include "tvc/dgp/scenario.hpp"
#include "tvc/glrt/prewhiten.hpp"
#include "tvc/glrt/statistic.hpp"
#include "tvc/loclin/local_linear.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace tvc;
using tvc::testing::Gen;

namespace {

/// Independent RSS_a from per-point weighted least squares.
double rss_alt_oracle(const TimeSeriesSample& s, const Kernel& k, double b) {
    double rss = 0.0;
    for (std::size_t i = 0; i < s.n(); ++i) {
        const Vector eta = tvc::testing::wls_local_linear(s.x(), s.y(), k, b, s.t(i));
        const auto ii = static_cast<Eigen::Index>(i);
        const double r = s.y()[ii] - s.x().row(ii).dot(eta.head(s.x().cols()));
        rss += r * r;
    }
    return rss;
}

}  // namespace

TEST(GlrtSingle, ZeroWhenNullEqualsAlternativeFit) {
    Gen g(1);
    const TimeSeriesSample s = g.sample(60, 2);
    const Kernel k = Kernel::epanechnikov();
    const LocalLinearFit fit = local_linear_fit(s, k, 0.3);
    const auto curve = [&](double t) -> Vector {
        const auto i = static_cast<Eigen::Index>(std::lround(t * 60.0)) - 1;
        return fit.beta_hat.row(i).transpose();
    };
    EXPECT_NEAR(glrt_single(s, NullSpec::simple(curve), k, 0.3).value, 0.0, 1e-10);
}

TEST(GlrtSingle, LedgerOracle) {
    Gen g(2);
    const TimeSeriesSample s = g.sample(30, 2);
    const Kernel k = Kernel::triangular();
    const StatisticValue v = glrt_single(s, NullSpec::zero(), k, 0.4);
    EXPECT_EQ(v.kind, StatisticKind::SingleLog);
    const double r0 = rss_null(s, NullSpec::zero(), k, 0.4);
    const double ra = local_linear_fit(s, k, 0.4).rss;
    EXPECT_EQ(v.value, 0.5 * 30.0 * std::log(r0 / ra));
    EXPECT_EQ(v.value, v.recompute());
    ASSERT_EQ(v.ledger.size(), 1u);
    EXPECT_EQ(v.ledger[0].rss_null, r0);
    EXPECT_EQ(v.ledger[0].rss_alt, ra);
    EXPECT_NEAR(ra, rss_alt_oracle(s, k, 0.4), 1e-10 * ra);
}

TEST(GlrtSingle, ZeroRssOnPerfectFit) {
    Gen g(3);
    const Matrix x = g.design(50, 2);
    Vector y(50);
    for (Eigen::Index i = 0; i < 50; ++i) y[i] = x.row(i).sum() * (1.0 + (i + 1) / 50.0);
    try {
        glrt_single(TimeSeriesSample(x, y), NullSpec::zero(), Kernel::epanechnikov(), 0.3);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ZeroRss);
    }
}

TEST(GlrtSingle, NullMeanMatchesHatMatrixTrace) {
    // For a fixed design and i.i.d. N(0,1) errors, E[RSS_0 - RSS_a] = tr(2S - S'S)
    // with S the hat matrix, built here column by column from the WLS oracle.
    const Kernel k = Kernel::uniform();
    const std::size_t n = 200;
    const double b = 0.25;
    const Matrix x = dgp::simulate_scenario(dgp::Scenario::A, n, 12).x();
    const auto nn = static_cast<Eigen::Index>(n);
    Matrix hat(nn, nn);
    for (Eigen::Index j = 0; j < nn; ++j) {
        const Vector e = Vector::Unit(nn, j);
        for (Eigen::Index i = 0; i < nn; ++i) {
            const double t = static_cast<double>(i + 1) / static_cast<double>(n);
            hat(i, j) = x.row(i).dot(tvc::testing::wls_local_linear(x, e, k, b, t).head(2));
        }
    }
    const double expected = 2.0 * hat.trace() - (hat.transpose() * hat).trace();

    Gen g(31);
    const int reps = 2000;
    double acc = 0.0, acc2 = 0.0;
    for (int r = 0; r < reps; ++r) {
        const TimeSeriesSample s(x, g.noise(n));
        const double v = averaged_statistic(s, NullSpec::zero(), k, BandwidthGrid({b})).value;
        acc += v;
        acc2 += v * v;
    }
    const double mean = acc / reps;
    const double se = std::sqrt((acc2 / reps - mean * mean) / reps);
    EXPECT_NEAR(mean, expected, 4.0 * se);
    // The interior Wilks constant 2 p c_K / b = 4 is exceeded through the boundary windows.
    EXPECT_GT(expected, 4.0);
}

TEST(GlrtSingle, SecondOrderLogBound) {
    Gen g(4);
    for (int rep = 0; rep < 50; ++rep) {
        const TimeSeriesSample s = g.sample(static_cast<std::size_t>(g.integer(50, 200)), 2);
        const StatisticValue v = glrt_single(s, NullSpec::zero(), g.kernel(), g.uniform(0.2, 0.5));
        const double r0 = v.ledger[0].rss_null, ra = v.ledger[0].rss_alt;
        const double d = (ra - r0) / r0;
        const double half_n = 0.5 * static_cast<double>(s.n());
        if (std::abs(d) < 0.5) EXPECT_LE(std::abs(v.value - (-half_n * d)), half_n * d * d);
    }
}

TEST(GlrtComponent, LedgerOracleAndDegenerateCase) {
    Gen g(5);
    const TimeSeriesSample s = g.sample(30, 3);
    const Kernel k = Kernel::epanechnikov();
    const NullSpec h01 = NullSpec::component(1);
    const StatisticValue v = glrt_component(s, h01, k, 0.45);
    EXPECT_EQ(v.kind, StatisticKind::ComponentLog);
    EXPECT_EQ(v.value, 0.5 * 30.0 * std::log(rss_null(s, h01, k, 0.45) / local_linear_fit(s, k, 0.45).rss));
    EXPECT_EQ(glrt_component(s, NullSpec::component(3), k, 0.45).value,
              glrt_single(s, NullSpec::zero(), k, 0.45).value);
    EXPECT_THROW(glrt_component(s, NullSpec::zero(), k, 0.45), Error);
}

TEST(Averaged, SingleTermAndAdditivity) {
    Gen g(6);
    const TimeSeriesSample s = g.sample(80, 2);
    const Kernel k = Kernel::epanechnikov();
    const StatisticValue one = averaged_statistic(s, NullSpec::zero(), k, BandwidthGrid({0.2}));
    EXPECT_EQ(one.value, s.y().squaredNorm() - local_linear_fit(s, k, 0.2).rss);
    const StatisticValue two = averaged_statistic(s, NullSpec::zero(), k, BandwidthGrid({0.3}));
    const StatisticValue both = averaged_statistic(s, NullSpec::zero(), k, BandwidthGrid({0.2, 0.3}));
    EXPECT_NEAR(both.value, one.value + two.value, 1e-12 * std::abs(both.value));
    EXPECT_EQ(both.bandwidths(), (std::vector<double>{0.2, 0.3}));
}

TEST(Averaged, BruteForceRecomputation) {
    Gen g(7);
    const TimeSeriesSample s = g.sample(50, 2);
    const Kernel k = Kernel::triangular();
    const BandwidthGrid grid({0.25, 0.35, 0.5});
    const StatisticValue v = averaged_statistic(s, NullSpec::zero(), k, grid);
    double oracle = 0.0;
    for (double b : grid.values()) oracle += s.y().squaredNorm() - rss_alt_oracle(s, k, b);
    EXPECT_NEAR(v.value, oracle, 1e-10 * std::abs(oracle));
    EXPECT_EQ(v.value, v.recompute());
}

TEST(Averaged, ComponentUsesSharedBandwidths) {
    Gen g(8);
    const TimeSeriesSample s = g.sample(70, 2);
    const Kernel k = Kernel::epanechnikov();
    const BandwidthGrid grid({0.2, 0.3});
    const NullSpec h01 = NullSpec::component(1);
    const StatisticValue v = averaged_statistic(s, h01, k, grid);
    EXPECT_EQ(v.kind, StatisticKind::AveragedComponent);
    double expected = 0.0;
    for (double b : grid.values()) expected += rss_null(s, h01, k, b) - local_linear_fit(s, k, b).rss;
    EXPECT_EQ(v.value, expected);
}

TEST(Averaged, ErrorsCarryGridBandwidth) {
    Gen g(9);
    const TimeSeriesSample s = g.sample(40, 2);
    try {
        averaged_statistic(s, NullSpec::zero(), Kernel::epanechnikov(), BandwidthGrid({0.01, 0.3}));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::SingularDesign);
        ASSERT_TRUE(e.bandwidth.has_value());
        EXPECT_DOUBLE_EQ(*e.bandwidth, 0.01);
        EXPECT_NE(std::string(e.what()).find("b_j"), std::string::npos);
    }
}

TEST(Prewhiten, ConstantFamily) {
    const TimeSeriesSample s(Matrix::Ones(40, 1), Vector::Constant(40, 5.0));
    const PrewhitenResult r = prewhiten(s, NullSpec::constant());
    ASSERT_EQ(r.theta_hat.size(), 1);
    EXPECT_NEAR(r.theta_hat[0], 5.0, 1e-12);
    EXPECT_LT(r.sample.y().cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_EQ(r.null.kind(), NullKind::Simple);
}

TEST(Prewhiten, LinearFamilyNoiseFree) {
    Gen g(10);
    const Matrix x = g.design(60, 2);
    Vector y(60);
    for (Eigen::Index i = 0; i < 60; ++i) {
        const double t = (i + 1) / 60.0;
        y[i] = x(i, 0) * (0.5 - t) + x(i, 1) * (2 + 3 * t);
    }
    const PrewhitenResult r = prewhiten(TimeSeriesSample(x, y), NullSpec::linear());
    EXPECT_LT(r.sample.y().cwiseAbs().maxCoeff(), 1e-10);
    ASSERT_EQ(r.theta_hat.size(), 4);
    EXPECT_NEAR(r.theta_hat[0], 0.5, 1e-10);
    EXPECT_NEAR(r.theta_hat[1], 2.0, 1e-10);
    EXPECT_NEAR(r.theta_hat[2], -1.0, 1e-10);
    EXPECT_NEAR(r.theta_hat[3], 3.0, 1e-10);
}

TEST(Prewhiten, IdempotentAndComponentRejected) {
    Gen g(11);
    const TimeSeriesSample s = g.sample(50, 2);
    const PrewhitenResult once = prewhiten(s, NullSpec::constant());
    const PrewhitenResult twice = prewhiten(once.sample, NullSpec::zero());
    EXPECT_EQ(twice.sample.y(), once.sample.y());
    EXPECT_THROW(prewhiten(s, NullSpec::component(1)), Error);
}

TEST(Prewhiten, OlsSamplingUnderScenarioA) {
    const int reps = 300;
    const Vector truth = (Vector(2) << 1.0, -0.5).finished();
    std::vector<double> est;
    for (int r = 0; r < reps; ++r) {
        const TimeSeriesSample e =
            dgp::simulate_scenario(dgp::Scenario::A, 200, derive_seed(5, {static_cast<std::uint64_t>(r)}));
        const TimeSeriesSample s = e.with_response(e.y() + e.x() * truth);
        est.push_back(prewhiten(s, NullSpec::constant()).theta_hat[1]);
    }
    double mean = 0.0;
    for (double v : est) mean += v;
    mean /= reps;
    double var = 0.0;
    for (double v : est) var += (v - mean) * (v - mean);
    var /= reps - 1;
    EXPECT_LT(std::abs(mean - truth[1]), 3.0 * std::sqrt(var / reps));
}
