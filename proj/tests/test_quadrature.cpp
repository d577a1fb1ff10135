#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "gen.hpp"
#include "orlicz/quadrature.hpp"

using namespace orlicz;

namespace {

QuadratureSpec nodes(std::size_t n, std::size_t workers = 1) {
    QuadratureSpec s;
    s.nodes = n;
    s.workers = workers;
    return s;
}

double one(double) { return 1.0; }

}  // namespace

TEST(Quadrature, L1Moments) {
    const auto K = OrliczBall::lp(2, 1.0);
    const auto s = nodes(512);
    const auto vol = integrate_quadrant(K, {}, Region{}, s);
    const auto ex = integrate_quadrant(K, [](std::span<const double> x) { return x[0]; }, Region{}, s);
    const auto exy = integrate_quadrant(K, [](std::span<const double> x) { return x[0] * x[1]; }, Region{}, s);
    EXPECT_NEAR(vol.value, 0.5, 1e-6);
    const double EX = ex.value / vol.value, EXY = exy.value / vol.value;
    EXPECT_NEAR(EX, 1.0 / 3.0, 1e-6);
    EXPECT_NEAR(EXY, 1.0 / 12.0, 1e-6);
    EXPECT_NEAR(EXY - EX * EX, -1.0 / 36.0, 1e-6);
}

TEST(Quadrature, DiskArea) {
    const auto r = integrate_quadrant(OrliczBall::lp(2, 2.0), {}, Region{}, nodes(256));
    // The outer midpoint rule meets the square-root edge at x = 1.
    EXPECT_NEAR(r.value, std::numbers::pi / 4.0, 1e-4);
    EXPECT_LE(std::fabs(r.value - std::numbers::pi / 4.0), 3.0 * r.error + 1e-12);
}

TEST(Quadrature, RegionMass) {
    const auto K = OrliczBall::lp(2, 1.0);
    Region R;
    R.factors.push_back(RegionFactor::in(CSet(1, {{0.3}}), {0}));
    R.factors.push_back(RegionFactor::out(CSet(1, {{0.3}}), {1}));
    EXPECT_NEAR(integrate_quadrant(K, {}, R, nodes(128)).value, 0.165, 1e-9);
}

TEST(Quadrature, SectionMeasure) {
    const auto K = OrliczBall::lp(3, 1.0);
    const auto r = section_measure(K, {0.5, std::nullopt, std::nullopt}, {}, nodes(128));
    EXPECT_NEAR(r.value, 0.125, 1e-9);
    EXPECT_EQ(section_measure(K, {1.5, std::nullopt, std::nullopt}, {}, nodes(64)).value, 0.0);
}

TEST(Quadrature, AdditivityOverComplement) {
    gen::for_cases(61, 20, [](Engine& rng, std::size_t) {
        const auto K = random_ball(gen::index(rng, 2, 3), rng);
        const CSet A = random_cset_in(K.radii(), rng);
        std::vector<std::size_t> axes(K.dim());
        for (std::size_t i = 0; i < axes.size(); ++i) axes[i] = i;
        Region in, out;
        in.factors.push_back(RegionFactor::in(A, axes));
        out.factors.push_back(RegionFactor::out(A, axes));
        const auto s = nodes(64);
        const auto a = integrate_quadrant(K, {}, in, s);
        const auto b = integrate_quadrant(K, {}, out, s);
        const auto t = integrate_quadrant(K, {}, Region{}, s);
        ASSERT_NEAR(a.value + b.value, t.value, verdict_tol({a.error, b.error, t.error})) << K.describe();
    });
}

TEST(Quadrature, WorkerCountDoesNotChangeBits) {
    const auto K = OrliczBall::lp(3, 1.5);
    const auto w = [](std::span<const double> x) { return x[0] * x[2] + 1.0; };
    const auto a = integrate_quadrant(K, w, Region{}, nodes(64, 1));
    const auto b = integrate_quadrant(K, w, Region{}, nodes(64, 4));
    EXPECT_EQ(a.value, b.value);
    EXPECT_EQ(a.error, b.error);
}

TEST(Quadrature, OneDimensional) {
    const auto r = integrate_1d([](double t) { return t * t; }, 0.0, 1.0, nodes(256));
    EXPECT_NEAR(r.value, 1.0 / 3.0, 1e-5);
    EXPECT_NEAR(integrate_1d([](double t) { return t < 0.3 ? 1.0 : 0.0; }, 0.0, 1.0, nodes(64), {0.3}).value, 0.3,
                1e-14);
    EXPECT_DOUBLE_EQ(verdict_tol({1.0, 2.0}), 9.0 + 1e-12);
}

TEST(RatioCompare, Example) {
    const auto r = ratio_compare([](double t) { return 1.0 - t; }, one, one, 0.0, 0.5, 0.5, 1.0, nodes(256));
    EXPECT_NEAR(r.lhs, 0.75, 1e-6);
    EXPECT_NEAR(r.rhs, 0.25, 1e-6);
    EXPECT_EQ(r.verdict, Verdict::pass);
    EXPECT_TRUE(r.fact_consistent);
}

TEST(RatioCompare, EqualFunctionsAreEqual) {
    const auto r = ratio_compare(one, one, one, 0.0, 0.5, 0.5, 1.0, nodes(64));
    EXPECT_NEAR(r.lhs, r.rhs, 1e-12);
    EXPECT_EQ(r.verdict, Verdict::pass);
}

TEST(RatioCompare, IncreasingRatioFails) {
    const auto r = ratio_compare([](double t) { return t; }, one, one, 0.0, 0.5, 0.5, 1.0, nodes(64));
    EXPECT_EQ(r.verdict, Verdict::fail);
}

TEST(RatioCompare, ZeroDenominatorIsVacuous) {
    const auto r = ratio_compare(one, [](double t) { return t < 0.5 ? 0.0 : 1.0; }, one, 0.0, 0.5, 0.5, 1.0, nodes(64));
    EXPECT_FALSE(r.lhs_defined);
    EXPECT_EQ(r.verdict, Verdict::vacuous);
}

TEST(Fraction, Equivalence) {
    EXPECT_TRUE(fraction_equivalence(3.0, 1.0, 4.0, 4.0, 1e-12));
    EXPECT_TRUE(fraction_equivalence(1.0, 3.0, 4.0, 4.0, 1e-12));
    gen::for_cases(62, 2000, [](Engine& rng, std::size_t) {
        ASSERT_TRUE(fraction_equivalence(gen::uniform(rng, 0.0, 2.0), gen::uniform(rng, 0.0, 2.0),
                                         gen::uniform(rng, 0.01, 2.0), gen::uniform(rng, 0.01, 2.0), 1e-12));
    });
}

TEST(Pairing, Example) {
    const auto r = pairing_check([](double t) { return std::exp(-t); }, one, [](double t) { return t; }, one, one,
                                 0.0, 1.0, nodes(256));
    EXPECT_NEAR(r.lhs, 1.0 - 2.0 * std::exp(-1.0), 1e-6);
    EXPECT_NEAR(r.rhs, 0.5 * (1.0 - std::exp(-1.0)), 1e-6);
    EXPECT_EQ(r.verdict, Verdict::pass);
}
