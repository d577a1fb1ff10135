#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <vector>

#include "gen.hpp"
#include "orlicz/concentration.hpp"
#include "orlicz/report.hpp"

using namespace orlicz;

TEST(Shao, ArithmeticExample) {
    ShaoParams p;
    p.x = 2.0;
    p.a = 1.0;
    p.alpha = 0.5;
    p.B_n = 1.0;
    p.tail = 0.1;
    EXPECT_NEAR(shao_maximal_bound(p), 2.445268164, 1e-9);
    EXPECT_TRUE(bound_vacuous(shao_maximal_bound(p)));
}

TEST(Shao, ZeroVarianceProxy) {
    ShaoParams p;
    p.x = 3.0;
    p.a = 0.5;
    p.B_n = 0.0;
    p.tail = 0.0;
    // B_n = 0 sends the log factor to infinity and the exponential to 0.
    EXPECT_NEAR(shao_maximal_bound(p), 0.0, 1e-12);
}

TEST(Shao, LargeVarianceLimit) {
    ShaoParams p;
    p.x = 1.0;
    p.B_n = 1e12;
    p.tail = 0.05;
    EXPECT_NEAR(shao_maximal_bound(p), 2.0 * 0.05 + 2.0 / (1.0 - 0.5), 1e-9);
}

TEST(Shao, RejectsBadParameters) {
    ShaoParams p;
    p.alpha = 1.0;
    EXPECT_THROW(shao_maximal_bound(p), std::invalid_argument);
    p.alpha = 0.5;
    p.x = 0.0;
    EXPECT_THROW(shao_maximal_bound(p), std::invalid_argument);
    p.x = 1.0;
    p.tail = 1.5;
    EXPECT_THROW(shao_maximal_bound(p), std::invalid_argument);
}

TEST(Corollary, MatchesDirectFormula) {
    gen::for_cases(81, 200, [](Engine& rng, std::size_t) {
        const double L2 = gen::uniform(rng, 0.02, 0.2);
        const double t = gen::uniform(rng, 0.01, 1.0);
        const std::size_t n = gen::index(rng, 4, 128);
        const double a = default_a(n, t);
        const double tail = gen::uniform(rng, 0.0, 0.1);
        const double L4 = 5.0 * L2 * L2;
        const double want =
            2.0 * tail +
            4.0 * std::exp(-static_cast<double>(n) * t * t / (4.0 * (a * t + L4)) * (1.0 + 2.0 / 3.0 * std::log1p(a * t / L4)));
        ASSERT_NEAR(corollary17_bound(L2, t, a, n, tail), want, 1e-12 * (1.0 + want));
    });
    EXPECT_NEAR(default_a(64, 0.5), std::cbrt(64.0 * 64.0 * 0.25), 1e-12);
}

TEST(Corollary, DecreasesInT) {
    double prev = 1e300;
    for (int k = 1; k <= 20; ++k) {
        const double t = 0.05 * k;
        const double b = corollary17_bound(1.0 / 12.0, t, default_a(64, t), 64, 0.0);
        ASSERT_LE(b, prev);
        prev = b;
    }
}

TEST(Wilson, KnownIntervals) {
    const auto [lo0, hi0] = wilson_interval(0, 100);
    EXPECT_EQ(lo0, 0.0);
    EXPECT_NEAR(hi0, 1.96 * 1.96 / (100.0 + 1.96 * 1.96), 1e-12);
    const auto [lo, hi] = wilson_interval(50, 100);
    EXPECT_NEAR(lo, 0.40382983, 1e-8);
    EXPECT_NEAR(hi, 0.59617017, 1e-8);
    const auto [lo1, hi1] = wilson_interval(100, 100);
    EXPECT_NEAR(hi1, 1.0, 1e-12);
    EXPECT_LT(lo1, 1.0);
}

TEST(Isotropize, CubeMoment) {
    const auto iso = isotropize(OrliczBall::cube(3, 0.5), 50000, 3);
    EXPECT_NEAR(iso.report.L_K_squared, 1.0 / 12.0, 2e-3);
    EXPECT_LT(iso.report.residual, 0.05);
    EXPECT_NEAR(iso.report.volume, 1.0, 1e-3);
}

TEST(Isotropize, BoxIsEqualized) {
    const auto iso = isotropize(OrliczBall::box({1.0, 2.0}), 50000, 4);
    ASSERT_EQ(iso.report.scale.size(), 2u);
    EXPECT_NEAR(iso.report.scale[0] / iso.report.scale[1], 2.0, 0.05);
    EXPECT_LT(iso.report.residual, 0.05);
}

TEST(Isotropize, OrliczBallStaysValid) {
    const YoungFunction flat = YoungFunction::from_points({{0.0, 0.0}, {0.3, 0.0}, {0.7, 0.4}, {1.0, 1.3}});
    const OrliczBall K({flat, YoungFunction::power(2.0), YoungFunction::cube(0.6)});
    const auto iso = isotropize(K, 20000, 5);
    EXPECT_EQ(iso.ball.dim(), 3u);
    EXPECT_LT(iso.report.residual, 0.1);
}

TEST(Tail, EmpiricalTailEnds) {
    const auto batch = sample_uniform(OrliczBall::cube(16, 0.5), 5000, 6);
    const auto curve = empirical_tail(batch, 1.0 / 12.0, {0.0, 10.0});
    ASSERT_EQ(curve.size(), 2u);
    EXPECT_EQ(curve[0].empirical, 1.0);
    EXPECT_EQ(curve[1].empirical, 0.0);
    EXPECT_DOUBLE_EQ(curve[1].ci_hi, wilson_interval(0, 5000).second);
    EXPECT_TRUE(curve[0].a_below_LK2 || curve[0].bound >= 1.0);
}

TEST(Tail, RunIsReproducible) {
    ConcentrationOptions o;
    o.N = 4000;
    o.iso_budget = 2000;
    o.seed = 7;
    const auto K = OrliczBall::cube(16, 0.5);
    const auto a = run_concentration(K, o);
    o.workers = 4;
    const auto b = run_concentration(K, o);
    const auto dir = std::filesystem::temp_directory_path();
    const auto pa = (dir / "orlicz_tail_a.csv").string(), pb = (dir / "orlicz_tail_b.csv").string();
    write_tail_csv(a.curve, pa);
    write_tail_csv(b.curve, pb);
    EXPECT_EQ(read_text(pa), read_text(pb));
    EXPECT_EQ(a.curve.size(), 21u);
    std::remove(pa.c_str());
    std::remove(pb.c_str());
}
