#include "tvc/core/errors.hpp"
#include "tvc/core/rng.hpp"
#include "tvc/dgp/dgp_spec.hpp"
#include "tvc/dgp/scenario.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace tvc;
using namespace tvc::dgp;

namespace {

constexpr std::size_t kLarge = 100000;

double mean(const Vector& v) { return v.mean(); }

double variance(const Vector& v) {
    const double m = v.mean();
    return (v.array() - m).square().sum() / static_cast<double>(v.size() - 1);
}

double correlation(const Vector& a, const Vector& b) {
    const Vector da = a.array() - a.mean();
    const Vector db = b.array() - b.mean();
    return da.dot(db) / std::sqrt(da.squaredNorm() * db.squaredNorm());
}

}  // namespace

TEST(Scenario, ParseAndLetters) {
    EXPECT_EQ(parse_scenario("a"), Scenario::A);
    EXPECT_EQ(parse_scenario("D"), Scenario::D);
    EXPECT_EQ(scenario_letter(Scenario::C), 'C');
    EXPECT_THROW(parse_scenario("E"), Error);
}

TEST(Scenario, ShapeAndNull) {
    for (Scenario s : {Scenario::A, Scenario::B, Scenario::C, Scenario::D}) {
        const TimeSeriesSample d = simulate_scenario(s, 50, 9);
        EXPECT_EQ(d.n(), 50u);
        EXPECT_EQ(d.p(), 2u);
        EXPECT_TRUE((d.x().col(0).array() == 1.0).all());
    }
    try {
        simulate_scenario(Scenario::A, 19, 1);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::BadSize);
    }
}

TEST(Scenario, Determinism) {
    for (Scenario s : {Scenario::A, Scenario::B, Scenario::C, Scenario::D}) {
        const TimeSeriesSample a = simulate_scenario(s, 300, 77);
        const TimeSeriesSample b = simulate_scenario(s, 300, 77);
        EXPECT_EQ(a.x(), b.x());
        EXPECT_EQ(a.y(), b.y());
        const TimeSeriesSample c = simulate_scenario(s, 300, 78);
        EXPECT_NE(a.y(), c.y());
    }
}

TEST(Scenario, AExponentialMeanAndIndependence) {
    const TimeSeriesSample d = simulate_scenario(Scenario::A, kLarge, 2024);
    const double n = static_cast<double>(kLarge);
    EXPECT_NEAR(mean(d.x().col(1)), 1.0, 3.0 / std::sqrt(n));
    EXPECT_LT(std::abs(correlation(d.x().col(1), d.y())), 3.0 / std::sqrt(n));
    EXPECT_NEAR(variance(d.y()), 1.0, 0.02);
}

TEST(Scenario, BEndogeneity) {
    const TimeSeriesSample d = simulate_scenario(Scenario::B, kLarge, 5);
    const Vector x2sq = d.x().col(1).array().square();
    const Vector esq = d.y().array().square();
    EXPECT_GT(correlation(x2sq, esq), 0.0);
}

TEST(Scenario, CTerminalVariance) {
    const TimeSeriesSample d = simulate_scenario(Scenario::C, kLarge, 6);
    std::vector<double> tail;
    for (std::size_t i = 0; i < d.n(); ++i) {
        if (d.t(i) >= 0.99) tail.push_back(d.y()[static_cast<Eigen::Index>(i)]);
    }
    const Vector v = Eigen::Map<const Vector>(tail.data(), static_cast<Eigen::Index>(tail.size()));
    const double expected = std::exp(-2.0) / 1e4;
    EXPECT_NEAR(variance(v), expected, 0.2 * expected);
    // The scale underflows to zero at the first grid points.
    EXPECT_EQ(d.y()[0], 0.0);
}

TEST(Scenario, DAutoregressiveMoments) {
    const TimeSeriesSample d = simulate_scenario(Scenario::D, kLarge, 8);
    const Vector& e = d.y();
    EXPECT_NEAR(variance(e), 4.0 / 3.0, 0.05 * 4.0 / 3.0);
    const Vector a = e.head(e.size() - 1);
    const Vector b = e.tail(e.size() - 1);
    EXPECT_NEAR(correlation(a, b), 0.5, 0.05);
    // x2 = eps_i eps_{i-1}: mean 0, variance 1, uncorrelated at lag 1.
    EXPECT_NEAR(mean(d.x().col(1)), 0.0, 0.02);
    EXPECT_NEAR(variance(d.x().col(1)), 1.0, 0.05);
}

TEST(Scenario, DBurnInGivesStationaryStart) {
    const int reps = 20000;
    Vector first(reps);
    for (int r = 0; r < reps; ++r) {
        first[r] = simulate_scenario(Scenario::D, 20, derive_seed(99, {static_cast<std::uint64_t>(r)})).y()[0];
    }
    EXPECT_NEAR(variance(first), 4.0 / 3.0, 0.06 * 4.0 / 3.0);
}

namespace {

DgpSpec white_noise_spec() {
    DgpSpec spec;
    spec.p = 1;
    spec.regressor = [] { return VectorFilter([](double, double) { return Vector::Ones(1); }); };
    spec.volatility = [] { return ScalarFilter([](double, double) { return 1.0; }); };
    spec.shape = [] { return ScalarFilter([](double, double g) { return g; }); };
    spec.beta = [](double) { return Vector::Zero(1); };
    return spec;
}

}  // namespace

TEST(CustomDgp, DegenerateFiltersGiveWhiteNoise) {
    const TimeSeriesSample d = simulate_custom(white_noise_spec(), 5000, 3);
    EXPECT_TRUE((d.x().array() == 1.0).all());
    EXPECT_NEAR(d.y().mean(), 0.0, 0.05);
    EXPECT_NEAR(variance(d.y()), 1.0, 0.06);
}

TEST(CustomDgp, NoiseFreeTruth) {
    DgpSpec spec = white_noise_spec();
    spec.p = 2;
    spec.regressor = [] {
        return VectorFilter([](double, double f) {
            Vector v(2);
            v << 1.0, f;
            return v;
        });
    };
    spec.volatility = [] { return ScalarFilter([](double, double) { return 0.0; }); };
    spec.beta = [](double t) {
        Vector b(2);
        b << t, 0.0;
        return b;
    };
    const TimeSeriesSample d = simulate_custom(spec, 40, 1);
    for (std::size_t i = 0; i < d.n(); ++i) EXPECT_DOUBLE_EQ(d.y()[static_cast<Eigen::Index>(i)], d.t(i));
}

TEST(CustomDgp, DeterministicAndStatefulFilters) {
    DgpSpec spec = white_noise_spec();
    spec.burn_in = 50;
    spec.shape = [] {
        return ScalarFilter([state = 0.0](double, double g) mutable {
            state = 0.5 * state + g;
            return state;
        });
    };
    const TimeSeriesSample a = simulate_custom(spec, 100, 12);
    const TimeSeriesSample b = simulate_custom(spec, 100, 12);
    EXPECT_EQ(a.y(), b.y());
}

TEST(CustomDgp, Validation) {
    DgpSpec spec = white_noise_spec();
    EXPECT_THROW(simulate_custom(spec, 10, 1), Error);
    spec.beta = nullptr;
    EXPECT_THROW(simulate_custom(spec, 40, 1), Error);
}
