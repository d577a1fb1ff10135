#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <variant>
#include <vector>

#include "gen.hpp"
#include "orlicz/ball.hpp"
#include "orlicz/samplers.hpp"
#include "orlicz/young.hpp"

using namespace orlicz;

TEST(Young, PowerAndCube) {
    const auto f = YoungFunction::power(1.0);
    EXPECT_DOUBLE_EQ(f(0.7), 0.7);
    EXPECT_DOUBLE_EQ(YoungFunction::power(2.0)(0.0), 0.0);
    EXPECT_DOUBLE_EQ(YoungFunction::power(2.0, 2.0)(1.0), 0.25);
    const auto c = YoungFunction::cube(1.0);
    EXPECT_EQ(c(0.5), 0.0);
    EXPECT_EQ(c(1.0), 0.0);
    EXPECT_TRUE(std::isinf(c(1.5)));
    EXPECT_FALSE(c.is_proper());
    EXPECT_TRUE(f.is_proper());
}

TEST(Young, PiecewiseLinearOracle) {
    const auto f = YoungFunction::from_points({{0.0, 0.0}, {0.5, 0.0}, {1.0, 1.0}});
    EXPECT_DOUBLE_EQ(f(0.75), 0.5);
    EXPECT_EQ(f(0.25), 0.0);
    EXPECT_DOUBLE_EQ(f.zero_end(), 0.5);
    EXPECT_DOUBLE_EQ(f.inverse(1.0), 1.0);
    EXPECT_TRUE(validate_young(f).ok);
    EXPECT_FALSE(f.is_proper());
}

TEST(Young, ValidationRejectsConcaveKink) {
    const auto f = YoungFunction::from_points({{0.0, 0.0}, {1.0, 2.0}, {2.0, 3.0}});
    const auto rep = validate_young(f);
    ASSERT_FALSE(rep.ok);
    bool convexity = false;
    for (const auto& issue : rep.issues)
        if (issue.invariant == "midpoint convexity") {
            convexity = true;
            ASSERT_TRUE(issue.pair.has_value());
            EXPECT_FALSE(midpoint_convex(f, issue.pair->first, issue.pair->second));
        }
    EXPECT_TRUE(convexity);
}

TEST(Young, ValidationRejectsZeroFunction) {
    const auto f = YoungFunction::from_points({{0.0, 0.0}, {1.0, 0.0}});
    EXPECT_FALSE(validate_young(f).ok);
    EXPECT_THROW(OrliczBall({f, YoungFunction::power(1.0)}), std::invalid_argument);
}

TEST(Young, ComposeAffineStartsAtZero) {
    // Rounding in the shifted base once produced a value of -1.5e-17 here.
    const auto f = YoungFunction::from_points({{0.0, 0.0}, {0.3, 0.0}, {0.7, 0.4}, {1.0, 1.3}});
    const auto g = f.compose_affine(1.0, 0.3).affine_value(0.0, 1.0 / 0.7);
    EXPECT_EQ(g(0.0), 0.0);
    EXPECT_TRUE(validate_young(g).ok);
}

TEST(Young, RandomFunctionsAreValid) {
    gen::for_cases(11, 300, [](Engine& rng, std::size_t) {
        const auto f = random_young(rng);
        ASSERT_TRUE(validate_young(f).ok) << f.describe();
        double prev = 0.0;
        const double top = std::isfinite(f.cap()) ? f.cap() : 3.0 * f.inverse(1.0) + 1.0;
        for (int k = 0; k <= 64; ++k) {
            const double v = f(top * k / 64.0);
            ASSERT_GE(v, prev) << f.describe();
            prev = v;
        }
    });
}

TEST(Young, InverseIsGeneralizedInverse) {
    gen::for_cases(12, 300, [](Engine& rng, std::size_t) {
        const auto f = random_young(rng);
        const double v = gen::uniform(rng, 0.0, 2.0);
        const double x = f.inverse(v);
        ASSERT_LE(f(x), v * (1.0 + 1e-9) + 1e-12) << f.describe() << " v=" << v;
        if (std::isfinite(x)) ASSERT_GT(f(x * (1.0 + 1e-6) + 1e-9), v) << f.describe() << " v=" << v;
    });
}

TEST(Young, ComposeAffineAndPlusStayValid) {
    gen::for_cases(13, 200, [](Engine& rng, std::size_t) {
        const auto f = random_young(rng);
        const auto g = random_young(rng);
        const double lambda = gen::uniform(rng, 0.1, 3.0);
        const double c = gen::uniform(rng, 0.0, 0.5) * f.inverse(1.0);
        const auto h = f.compose_affine(lambda, c).affine_value(f(c), 1.0);
        const auto s = f.plus(g);
        ASSERT_TRUE(validate_young(h).ok) << f.describe();
        ASSERT_TRUE(validate_young(s).ok) << f.describe() << " + " << g.describe();
        for (int k = 0; k < 16; ++k) {
            const double t = gen::uniform(rng, 0.0, 1.5);
            const double hv = h(t), fv = f(lambda * t + c) - f(c);
            if (std::isinf(fv)) ASSERT_TRUE(std::isinf(hv));
            else ASSERT_NEAR(hv, fv, 1e-9 * (1.0 + fv));
            const double e = s(t), want = f(t) + g(t);
            if (std::isinf(want)) ASSERT_TRUE(std::isinf(e));
            else ASSERT_NEAR(e, want, 1e-9 * (1.0 + want));
        }
    });
}

TEST(Ball, MembershipExamples) {
    const auto l1 = OrliczBall::lp(2, 1.0);
    EXPECT_TRUE(membership(l1, std::vector<double>{0.3, 0.4}));
    EXPECT_FALSE(membership(l1, std::vector<double>{0.8, 0.4}));
    EXPECT_TRUE(membership(l1, std::vector<double>{-0.3, 0.4}));
    const auto l2 = OrliczBall::lp(3, 2.0);
    EXPECT_FALSE(membership(l2, std::vector<double>{0.6, 0.6, 0.6}));
    EXPECT_TRUE(membership(l2, std::vector<double>{0.5, 0.5, 0.5}));
    EXPECT_THROW(membership(l2, std::vector<double>{0.1, 0.1}), std::invalid_argument);
    EXPECT_DOUBLE_EQ(l2.radius(0), 1.0);
}

TEST(Ball, MembershipIsOneSymmetric) {
    gen::for_cases(21, 100, [](Engine& rng, std::size_t) {
        const auto K = random_ball(gen::index(rng, 1, 5), rng);
        for (int k = 0; k < 20; ++k) {
            auto x = gen::point_in(K.radii(), rng, 1.2);
            const bool in = K.contains(x);
            const std::size_t i = gen::index(rng, 0, x.size() - 1);
            x[i] = -x[i];
            ASSERT_EQ(in, K.contains(x)) << K.describe();
        }
    });
}

TEST(Ball, QuadrantVolumeOracles) {
    EXPECT_NEAR(quadrant_volume(OrliczBall::lp(2, 1.0)).value, 0.5, 1e-4);
    EXPECT_NEAR(quadrant_volume(OrliczBall::lp(6, 1.0)).value, 1.0 / 720.0, 1e-5);
    EXPECT_NEAR(quadrant_volume(OrliczBall::lp(2, 2.0)).value, std::numbers::pi / 4.0, 1e-3);
    EXPECT_NEAR(quadrant_volume(OrliczBall::box({1.0, 2.0, 0.5})).value, 1.0, 1e-9);
}

TEST(Restriction, IntervalOracle) {
    const auto K = OrliczBall::lp(2, 1.0);
    const auto r = restrict_interval(K, 0, 0.25, 0.75);
    ASSERT_TRUE(std::holds_alternative<OrliczBall>(r.body));
    const auto& Kr = std::get<OrliczBall>(r.body);
    EXPECT_NEAR(Kr.young(0)(0.3), 0.4, 1e-12);
    EXPECT_TRUE(std::isinf(Kr.young(0)(0.6)));
    EXPECT_NEAR(Kr.young(1)(0.3), 0.4, 1e-12);

    std::size_t bad = 0;
    for (int i = 0; i < 100; ++i)
        for (int j = 0; j < 100; ++j) {
            const std::vector<double> y{(i + 0.5) / 100.0, (j + 0.5) / 100.0};
            const auto x = r.embed(y);
            const bool want = x[0] <= 0.75 && K.quadrant_contains(x);
            if (std::fabs(x[0] + x[1] - 1.0) < 1e-9 || std::fabs(x[0] - 0.75) < 1e-9) continue;
            if (want != r.quadrant_contains(y)) ++bad;
        }
    EXPECT_EQ(bad, 0u);
}

TEST(Restriction, IntervalEmptyAndWhole) {
    const auto K = OrliczBall::lp(2, 1.0);
    EXPECT_TRUE(restrict_interval(K, 0, 1.5, 2.0).is_empty());
    const auto whole = restrict_interval(K, 1, 0.0, 2.0);
    ASSERT_FALSE(whole.is_empty());
    gen::for_cases(31, 200, [&](Engine& rng, std::size_t) {
        const auto y = gen::point_in({1.2, 1.2}, rng);
        ASSERT_EQ(whole.quadrant_contains(y), K.quadrant_contains(y));
    });
}

TEST(Restriction, HyperplaneOracles) {
    const auto K = OrliczBall::lp(3, 1.0);
    RestrictionSpec s;
    s.kind = RestrictionSpec::Kind::hyperplane;
    s.axis = 0;
    s.other_axis = 1;
    s.lambda = 1.0;
    s.c = 0.0;
    const auto r = restrict_hyperplane(K, s);
    ASSERT_TRUE(std::holds_alternative<OrliczBall>(r.body));
    const auto& Kr = std::get<OrliczBall>(r.body);
    ASSERT_EQ(Kr.dim(), 2u);
    EXPECT_NEAR(Kr.young(0)(0.2), 0.4, 1e-12);
    EXPECT_NEAR(Kr.young(1)(0.2), 0.2, 1e-12);

    s.lambda = 0.0;
    const auto flat = restrict_hyperplane(K, s);
    ASSERT_TRUE(std::holds_alternative<OrliczBall>(flat.body));
    EXPECT_NEAR(std::get<OrliczBall>(flat.body).young(0)(0.3), 0.3, 1e-12);

    RestrictionSpec far = s;
    far.lambda = 1.0;
    far.c = 2.0;
    EXPECT_TRUE(restrict_hyperplane(OrliczBall::lp(2, 1.0), far).is_empty());

    RestrictionSpec neg = s;
    neg.lambda = -1.0;
    EXPECT_THROW(restrict_hyperplane(K, neg), std::invalid_argument);
}

TEST(Restriction, HyperplaneMembershipProperty) {
    gen::for_cases(32, 60, [](Engine& rng, std::size_t) {
        const auto K = random_ball(gen::index(rng, 2, 3), rng);
        RestrictionSpec s;
        s.kind = RestrictionSpec::Kind::hyperplane;
        s.axis = gen::index(rng, 0, K.dim() - 1);
        s.other_axis = (s.axis + 1) % K.dim();
        s.lambda = gen::uniform(rng, 0.0, 2.0);
        s.c = gen::uniform(rng, -0.3, 0.6) * K.radius(s.axis);
        const auto r = restrict_hyperplane(K, s);
        if (r.is_empty()) return;
        const double top = *std::max_element(K.radii().begin(), K.radii().end());
        for (int t = 0; t < 200; ++t) {
            std::vector<double> y(r.dim());
            for (auto& v : y) v = gen::uniform(rng, 0.0, 1.5 * top);
            const auto x = r.embed(y);
            bool on_edge = std::fabs(K.level_sum(x) - 1.0) < 1e-9;
            for (double v : x) on_edge = on_edge || std::fabs(v) < 1e-12;
            if (on_edge) continue;
            bool want = K.quadrant_contains(x);
            for (double v : x) want = want && v >= 0.0;
            ASSERT_EQ(want, r.quadrant_contains(y)) << K.describe() << " c=" << s.c << " lambda=" << s.lambda;
        }
    });
}

TEST(Properize, ProperBallUnchanged) {
    const auto K = OrliczBall::lp(3, 2.0);
    EXPECT_EQ(properize(K, 0.1).describe(), K.describe());
    EXPECT_THROW(properize(K, 0.0), std::invalid_argument);
}

TEST(Properize, CubeLosesAtMostEps) {
    const auto K = OrliczBall::cube(2);
    ProperizeReport rep;
    const auto Kp = properize(K, 0.01, &rep);
    ASSERT_TRUE(Kp.is_proper());
    const auto batch = sample_rejection(K, 200000, 5);
    std::size_t lost = 0;
    for (std::size_t i = 0; i < batch.rows(); ++i)
        if (!Kp.contains(batch.row(i))) ++lost;
    const double N = static_cast<double>(batch.rows());
    const double frac = lost / N;
    EXPECT_LE(frac, 0.01 + 3.0 * std::sqrt(frac * (1.0 - frac) / N));
    const auto inner = sample_rejection(Kp, 20000, 6);
    for (std::size_t i = 0; i < inner.rows(); ++i) ASSERT_TRUE(K.contains(inner.row(i)));
}

TEST(Properize, FlatStartStaysInside) {
    const auto flat = YoungFunction::from_points({{0.0, 0.0}, {0.5, 0.0}, {1.0, 1.0}});
    const OrliczBall K({flat, flat});
    const auto Kp = properize(K, 0.1);
    ASSERT_TRUE(Kp.is_proper());
    gen::for_cases(41, 10000, [&](Engine& rng, std::size_t) {
        const auto x = gen::point_in({1.1, 1.1}, rng);
        if (Kp.contains(x)) ASSERT_TRUE(K.contains(x));
    });
}
