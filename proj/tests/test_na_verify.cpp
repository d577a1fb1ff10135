#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "gen.hpp"
#include "orlicz/samplers.hpp"
#include "orlicz/verify.hpp"

using namespace orlicz;

namespace {

QuadratureSpec nodes(std::size_t n) {
    QuadratureSpec s;
    s.nodes = n;
    return s;
}

const LogConcaveWeight kFlat{{0.0}, {0.0}, {0.0}};

}  // namespace

TEST(FourTerm, L1Example) {
    const auto K = OrliczBall::lp(2, 1.0);
    const CSet A(1, {{0.3}});
    const auto r = four_term_check(K, A, {0}, A, {1}, nodes(128));
    const double want[4] = {0.09, 0.165, 0.165, 0.08};
    for (int k = 0; k < 4; ++k) {
        EXPECT_NEAR(r.masses[k], want[k], 1e-5);
        EXPECT_LE(std::fabs(r.masses[k] - want[k]), 3.0 * r.errors[k] + 1e-12);
    }
    EXPECT_NEAR(r.margin, 0.020025, 1e-5);
    EXPECT_EQ(r.verdict, Verdict::pass);
}

TEST(FourTerm, CubeIsIndependent) {
    const auto K = OrliczBall::cube(3);
    gen::for_cases(71, 20, [&](Engine& rng, std::size_t) {
        const std::vector<double> box2{1.0, 1.0}, box1{1.0};
        const CSet A = random_cset_in(box2, rng);
        const CSet B = random_cset_in(box1, rng);
        const auto r = four_term_check(K, A, {0, 2}, B, {1}, nodes(64));
        ASSERT_NEAR(r.margin, 0.0, 1e-9) << A.describe() << B.describe();
    });
}

TEST(FourTerm, EmptySetIsVacuous) {
    const auto r = four_term_check(OrliczBall::lp(2, 1.0), CSet(1), {0}, CSet(1, {{0.3}}), {1}, nodes(64));
    EXPECT_EQ(r.verdict, Verdict::vacuous);
}

TEST(FourTerm, SampledAgreesWithQuadrature) {
    const auto K = OrliczBall::lp(2, 1.0);
    const CSet A(1, {{0.3}});
    const auto batch = sample_rejection(K, 200000, 3);
    const auto r = four_term_sampled(batch, A, {0}, A, {1});
    const double scale = 0.25;  // sampled masses are probabilities: divide by vol^2
    EXPECT_NEAR(r.margin, 0.020025 / scale, r.tol);
    EXPECT_EQ(r.verdict, Verdict::pass);
}

TEST(Covariance, L1CoordinatesAreNegativelyCorrelated) {
    SamplerOptions full;
    full.full = true;
    const auto batch = sample_rejection(OrliczBall::lp(2, 1.0), 200000, 4, full);
    const auto id = [](std::span<const double> x) { return x[0]; };
    const auto c = na_covariance_test(batch, {0}, id, {1}, id);
    EXPECT_NEAR(c.estimate, -1.0 / 36.0, 4.0 * c.se);
    EXPECT_EQ(c.verdict, Verdict::pass);
    EXPECT_DOUBLE_EQ(c.tol, 4.0 * c.se + 1e-12);
}

TEST(Covariance, ConstantIsVacuous) {
    const auto batch = sample_rejection(OrliczBall::lp(2, 1.0), 1000, 5);
    const auto c = na_covariance_test(batch, {0}, [](std::span<const double>) { return 1.0; }, {1},
                                      [](std::span<const double> x) { return x[0]; });
    EXPECT_EQ(c.estimate, 0.0);
    EXPECT_EQ(c.verdict, Verdict::vacuous);
}

TEST(Covariance, CubeHasNoCorrelation) {
    const auto batch = sample_rejection(OrliczBall::cube(2), 200000, 6);
    const auto sq = [](std::span<const double> x) { return x[0] * x[0]; };
    const auto c = na_covariance_test(batch, {0}, sq, {1}, sq);
    EXPECT_NEAR(c.estimate, 0.0, c.tol);
}

TEST(Theta, PhiRatioOracle) {
    const auto inst = ThetaInstance::phi_pair(OrliczBall::lp(3, 1.0), 2, 0.2, 0.4);
    const auto t = theta_ratio(inst, ProperMeasure::lebesgue(), Region{}, nodes(128));
    ASSERT_TRUE(t.defined);
    EXPECT_NEAR(t.value, 0.5625, 1e-9);
    const auto e = inst.eta(std::vector<double>{0.3, 0.3});
    EXPECT_EQ(e.eta1, 1.0);
    EXPECT_EQ(e.eta2, 1.0);
    EXPECT_EQ(inst.eta(std::vector<double>{0.3, 0.4}).eta2, 0.0);
}

TEST(Theta, PsiWithEmptySetIsOne) {
    const auto inst = ThetaInstance::psi_pair(OrliczBall::lp(3, 1.0), {2}, CSet(1));
    const auto t = theta_ratio(inst, ProperMeasure::lebesgue(), Region{}, nodes(64));
    ASSERT_TRUE(t.defined);
    EXPECT_NEAR(t.value, 1.0, 1e-12);
    const auto e = inst.eta(std::vector<double>{0.2, 0.3});
    EXPECT_NEAR(e.eta1, 0.5, 1e-9);
    EXPECT_GE(e.eta1, e.eta2);
}

TEST(Theta, PsiEtaOracle) {
    const auto inst = ThetaInstance::psi_pair(OrliczBall::lp(3, 1.0), {2}, CSet(1, {{0.2}}));
    const auto e = inst.eta(std::vector<double>{0.2, 0.3});
    EXPECT_NEAR(e.eta1, 0.5, 1e-9);
    EXPECT_NEAR(e.eta2, 0.3, 1e-9);
}

TEST(Theta, MainExample) {
    const auto inst = ThetaInstance::phi_pair(OrliczBall::lp(3, 1.0), 2, 0.0, 0.5);
    const auto r = theorem_main_check(inst, ProperMeasure::lebesgue(), CSet(2, {{0.5, 0.5}}), nodes(128));
    EXPECT_NEAR(r.theta_A.value, 0.5, 1e-9);
    EXPECT_NEAR(r.theta_K.value, 0.25, 1e-9);
    EXPECT_NEAR(r.theta_Ac.value, 0.0, 1e-9);
    EXPECT_NEAR(r.upper.margin, 0.25, 1e-9);
    EXPECT_NEAR(r.lower.margin, 0.25, 1e-9);
    EXPECT_EQ(r.verdict, Verdict::pass);
}

TEST(Theta, SlabRatioMonotone) {
    const auto r = slab_ratio_check(OrliczBall::lp(3, 1.0), 2, CSet(2, {{0.3, 0.6}}), ProperMeasure::lebesgue(), 16,
                                    nodes(64));
    EXPECT_EQ(r.verdict, Verdict::pass);
    EXPECT_TRUE(r.violations.empty());
}

TEST(Theta, MonotonicityOnRandomInstances) {
    gen::for_cases(72, 5, [](Engine& rng, std::size_t c) {
        const auto K = random_ball(3, rng);
        const auto inst = ThetaInstance::phi_pair(K, 2, 0.0, gen::uniform(rng, 0.1, 0.9) * K.radius(2));
        const auto r = theta_monotonicity_check(inst, ProperMeasure::lebesgue(), {}, 16, c, nodes(64));
        ASSERT_NE(r.verdict, Verdict::fail) << inst.describe();
    });
}

TEST(ConcavePower, RootConcavity) {
    ConcavePower f;
    f.lines = {{1.0, -1.0}};
    f.lo = 0.0;
    f.hi = 1.0;
    f.m = 2;
    EXPECT_DOUBLE_EQ(f(0.5), 0.25);
    EXPECT_EQ(f(1.5), 0.0);
    EXPECT_TRUE(root_concave_on_grid(f));
    ProperMeasure mu{f, ConcavePower{}};
    EXPECT_TRUE(mu.proper_for(std::vector<double>{1.0}));
    EXPECT_FALSE(mu.proper_for(std::vector<double>{0.5}));
}

TEST(FourPoint, Example) {
    const auto r = bm_four_point_check(OrliczBall::lp(3, 1.0), 0, 1, 0.1, 0.3, 0.1, 0.3, kFlat, nodes(64));
    EXPECT_NEAR(r.sections[0], 0.8, 1e-12);
    EXPECT_NEAR(r.sections[1], 0.6, 1e-12);
    EXPECT_NEAR(r.sections[2], 0.6, 1e-12);
    EXPECT_NEAR(r.sections[3], 0.4, 1e-12);
    EXPECT_NEAR(r.margin, 0.04, 1e-12);
    EXPECT_EQ(r.verdict, Verdict::pass);
}

TEST(FourPoint, DegenerateIsExactlyZero) {
    gen::for_cases(73, 20, [](Engine& rng, std::size_t) {
        const auto K = random_ball(gen::index(rng, 3, 4), rng);
        const auto nu = random_log_concave(K.dim() - 2, rng);
        const double x = gen::uniform(rng, 0.0, 0.8) * K.radius(0);
        const auto r = bm_four_point_check(K, 0, 1, x, x, 0.1 * K.radius(1), 0.4 * K.radius(1), nu, nodes(32));
        ASSERT_EQ(r.margin, 0.0) << K.describe();
    });
}

TEST(Lp, ExponentialCrossTermIsExact) {
    RadialDensity m;
    m.kind = RadialDensity::Kind::exp;
    m.param = 1.0;
    m.p = 2.0;
    const RadiusSet A{RadiusFn(RadiusFn::AbsLinear{{1.0, -0.5}}, 2), 0.5};
    const RadiusSet B{RadiusFn(RadiusFn::AbsLinear{{1.0}}, 1), 0.7};
    LpGrid g;
    g.r_points = 8;
    g.s_points = 8;
    g.direction_nodes = 256;
    g.radial_nodes = 512;
    const auto r = lp_section_inequalities(2.0, 3, 2, m, A, B, g);
    EXPECT_LE(r.cross_term_gap, 1e-12);
    for (const auto& c : r.checks) EXPECT_NE(c.verdict, Verdict::fail);
}

TEST(Lp, ConeFractionOfQuarter) {
    const auto all = [](std::span<const double>) { return true; };
    EXPECT_NEAR(cone_fraction(2.0, 2, 1.0, all), 1.0, 1e-12);
    const auto below_diag = [](std::span<const double> x) { return x[1] <= x[0]; };
    EXPECT_NEAR(cone_fraction(2.0, 2, 1.0, below_diag), 0.5, 1e-3);
}

TEST(Moments, L1Oracle) {
    MomentSpec s{{1.0, 1.0}, 4};
    const auto r = moment_compare(OrliczBall::lp(2, 1.0), s, nodes(1024));
    EXPECT_NEAR(r.lhs, 0.2, 1e-6);
    EXPECT_NEAR(r.rhs, 0.3, 1e-6);
    EXPECT_EQ(r.verdict, Verdict::pass);
}

TEST(Moments, SecondMomentSidesAgree) {
    gen::for_cases(74, 10, [](Engine& rng, std::size_t) {
        const auto K = random_ball(gen::index(rng, 2, 3), rng);
        MomentSpec s;
        for (std::size_t i = 0; i < K.dim(); ++i) s.a.push_back(gen::uniform(rng, -1.0, 1.0));
        s.p = 2;
        const auto r = moment_compare(K, s, nodes(64));
        ASSERT_NEAR(r.lhs, r.rhs, 1e-9 * (1.0 + std::fabs(r.lhs))) << K.describe();
    });
}

TEST(Moments, OddPowerRejected) {
    MomentSpec s{{1.0, 1.0}, 3};
    EXPECT_THROW(s.validate(), std::invalid_argument);
    EXPECT_THROW(moment_compare(OrliczBall::lp(2, 1.0), s), std::invalid_argument);
}
