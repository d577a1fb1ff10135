#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "orlicz/samplers.hpp"

using namespace orlicz;

namespace {

double pnorm(std::span<const double> x, double p) {
    double s = 0.0;
    for (double v : x) s += std::pow(std::fabs(v), p);
    return std::pow(s, 1.0 / p);
}

double column_mean(const SampleBatch& b, std::size_t j) {
    double s = 0.0;
    for (std::size_t i = 0; i < b.rows(); ++i) s += b.at(i, j);
    return s / static_cast<double>(b.rows());
}

}  // namespace

TEST(Rejection, AcceptanceRates) {
    EXPECT_EQ(sample_rejection(OrliczBall::cube(3), 1000, 1).acceptance, 1.0);
    const auto b = sample_rejection(OrliczBall::lp(2, 1.0), 100000, 2);
    const double se = std::sqrt(0.25 / 100000.0);
    EXPECT_NEAR(b.acceptance, 0.5, 3.0 * se);
    EXPECT_THROW(sample_rejection(OrliczBall::lp(11, 1.0), 10, 1), std::invalid_argument);
}

TEST(Rejection, PointsLieInBall) {
    SamplerOptions full;
    full.full = true;
    const auto K = OrliczBall::lp(3, 1.5);
    const auto b = sample_rejection(K, 20000, 3, full);
    ASSERT_EQ(b.rows(), 20000u);
    bool negative = false;
    for (std::size_t i = 0; i < b.rows(); ++i) {
        ASSERT_TRUE(K.contains(b.row(i)));
        negative = negative || b.at(i, 0) < 0.0;
    }
    EXPECT_TRUE(negative);
}

TEST(Rejection, ReproducibleAcrossWorkers) {
    const auto K = OrliczBall::lp(3, 1.0);
    SamplerOptions one, four;
    four.workers = 4;
    const auto a = sample_rejection(K, 5000, 7, one);
    const auto b = sample_rejection(K, 5000, 7, four);
    EXPECT_EQ(a.data, b.data);
    EXPECT_NE(a.data, sample_rejection(K, 5000, 8, one).data);
}

TEST(HitAndRun, AgreesWithRejection) {
    const auto K = OrliczBall::lp(2, 1.0);
    const auto exact = sample_rejection(K, 100000, 4);
    for (Direction d : {Direction::sphere, Direction::coordinate}) {
        ChainOptions c;
        c.direction = d;
        const auto chain = sample_hit_and_run(K, 100000, 5, c);
        ASSERT_TRUE(chain.is_mcmc());
        const auto id = [](std::span<const double> x) { return x[0]; };
        const auto m1 = estimate_mean(exact, id);
        const auto m2 = estimate_mean(chain, id);
        EXPECT_NEAR(m1.mean, m2.mean, 4.0 * std::hypot(m1.se, m2.se));
        EXPECT_NEAR(m2.mean, 1.0 / 3.0, 4.0 * m2.se);
        for (std::size_t i = 0; i < chain.rows(); ++i) ASSERT_TRUE(K.quadrant_contains(chain.row(i)));
    }
}

TEST(HitAndRun, ReproducibleAcrossWorkers) {
    const auto K = OrliczBall::lp(8, 1.0);
    SamplerOptions four;
    four.workers = 4;
    ChainOptions c;
    c.direction = Direction::coordinate;
    EXPECT_EQ(sample_hit_and_run(K, 4000, 9, c).data, sample_hit_and_run(K, 4000, 9, c, four).data);
}

TEST(Lp, RadialCdfIsPowerOfRadius) {
    for (double p : {1.0, 2.0, 3.0}) {
        RadialDensity m;
        m.kind = RadialDensity::Kind::indicator;
        m.param = 1.0;
        m.p = p;
        const std::size_t n = 3, N = 100000;
        const auto b = sample_lp(n, m, N, 10);
        for (double r : {0.5, 0.8, 0.95}) {
            std::size_t k = 0;
            for (std::size_t i = 0; i < b.rows(); ++i)
                if (pnorm(b.row(i), p) <= r) ++k;
            const double want = std::pow(r, static_cast<double>(n));
            EXPECT_NEAR(static_cast<double>(k) / N, want, 4.0 * std::sqrt(want * (1.0 - want) / N)) << p << " " << r;
        }
    }
}

TEST(Lp, SurfacePointsHaveUnitNorm) {
    const auto b = sample_lp_surface(4, 3.0, 1000, 11);
    for (std::size_t i = 0; i < b.rows(); ++i) ASSERT_NEAR(pnorm(b.row(i), 3.0), 1.0, 1e-12);
    RadialDensity bad;
    bad.p = 0.5;
    EXPECT_THROW(sample_lp(2, bad, 10, 1), std::invalid_argument);
}

TEST(Resample, KeepsMarginalsAndBreaksDependence) {
    SamplerOptions full;
    full.full = true;
    const auto b = sample_rejection(OrliczBall::lp(2, 1.0), 200000, 12, full);
    const auto c = independent_copies(b, 13);
    ASSERT_EQ(c.rows(), b.rows());
    EXPECT_NEAR(column_mean(c, 0), column_mean(b, 0), 0.01);
    const auto abs_prod = [](std::span<const double> x) { return std::fabs(x[0] * x[1]); };
    const auto dep = estimate_mean(b, abs_prod);
    const auto ind = estimate_mean(c, abs_prod);
    EXPECT_NEAR(dep.mean, 1.0 / 12.0, 4.0 * dep.se);
    EXPECT_NEAR(ind.mean, 1.0 / 9.0, 4.0 * ind.se);
}

TEST(Diagnostics, LagOneAutocorrelation) {
    std::vector<double> alt(1000);
    for (std::size_t i = 0; i < alt.size(); ++i) alt[i] = i % 2 ? 1.0 : -1.0;
    EXPECT_NEAR(lag1_autocorrelation(alt), -1.0, 1e-2);
    std::vector<double> ramp(1000);
    for (std::size_t i = 0; i < ramp.size(); ++i) ramp[i] = static_cast<double>(i);
    EXPECT_GT(lag1_autocorrelation(ramp), 0.99);
}
