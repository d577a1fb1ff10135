#include "orlicz/suites.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>

#include "orlicz/concentration.hpp"
#include "orlicz/parallel.hpp"
#include "orlicz/quadrature.hpp"
#include "orlicz/random_instances.hpp"
#include "orlicz/samplers.hpp"
#include "orlicz/verify.hpp"

namespace orlicz {

namespace {

using Rows = std::vector<CheckRow>;

double uni(Engine& rng, double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }

std::size_t pick(Engine& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

bool coin(Engine& rng, double p = 0.5) { return uni(rng, 0.0, 1.0) < p; }

std::string num(double v) { return format_double(v); }

CheckRow row(std::string id, const std::string& text, double margin, double tol, Verdict v) {
    return {std::move(id), fnv1a(text), margin, tol, v};
}

CheckRow row(std::string id, const std::string& text, const Margin& m) {
    return row(std::move(id), text, m.margin, m.tol, m.verdict);
}

/// |value - target| <= tol as a row.
CheckRow equality_row(std::string id, const std::string& text, double value, double target, double tol) {
    const double m = -std::fabs(value - target);
    return row(std::move(id), text, m, tol, judge(m, tol));
}

std::size_t count_or(const SuiteOptions& o, std::size_t fallback) { return o.instances ? o.instances : fallback; }
std::size_t samples_or(const SuiteOptions& o, std::size_t fallback) { return o.samples ? o.samples : fallback; }

QuadratureSpec quad(const SuiteOptions& o, std::size_t nodes = 256) {
    QuadratureSpec s;
    s.nodes = o.nodes ? o.nodes : nodes;
    s.levels = o.levels ? o.levels : 3;
    s.workers = 1;
    return s;
}

std::uint64_t part_seed(const SuiteOptions& o, const std::string& part) { return sub_seed(o.seed, fnv1a(part)); }

/// Runs body(rng, rows) for each instance on the worker pool; rows come back
/// in instance order.
Rows fan_out(const SuiteOptions& o, const std::string& part, std::size_t count,
             const std::function<void(Engine&, Rows&)>& body) {
    const std::uint64_t seed = part_seed(o, part);
    std::vector<Rows> slots(count);
    parallel_for(count, o.workers, [&](std::size_t i) {
        Engine rng(sub_seed(seed, i));
        body(rng, slots[i]);
    });
    Rows out;
    for (auto& s : slots) out.insert(out.end(), s.begin(), s.end());
    return out;
}

/// Same, one instance after another; for parts whose samplers use the workers.
Rows sequential(const SuiteOptions& o, const std::string& part, std::size_t count,
                const std::function<void(Engine&, Rows&)>& body) {
    const std::uint64_t seed = part_seed(o, part);
    Rows out;
    for (std::size_t i = 0; i < count; ++i) {
        Engine rng(sub_seed(seed, i));
        body(rng, out);
    }
    return out;
}

/// Keeps the draw with the smallest margin + tol; any fail makes the row fail.
struct WorstOf {
    CheckRow best;
    bool seen = false;
    bool failed = false;

    void see(const CheckRow& r) {
        if (r.verdict == Verdict::vacuous) return;
        failed = failed || r.verdict == Verdict::fail;
        if (!seen || r.margin + r.tol < best.margin + best.tol) best = r;
        seen = true;
    }
    CheckRow result(std::string id, const std::string& text) const {
        if (!seen) return row(std::move(id), text, 0.0, 0.0, Verdict::vacuous);
        CheckRow r = best;
        r.check_id = std::move(id);
        r.instance_hash = fnv1a(text);
        r.verdict = failed ? Verdict::fail : Verdict::pass;
        return r;
    }
};

std::vector<double> radii_of(const OrliczBall& K, const std::vector<std::size_t>& axes) {
    std::vector<double> r;
    for (std::size_t a : axes) r.push_back(K.radius(a));
    return r;
}

std::string axes_text(const std::vector<std::size_t>& axes) {
    std::string s = "[";
    for (std::size_t a : axes) s += std::to_string(a) + ",";
    return s + "]";
}

/// Disjoint nonempty I, J among the axes 0..n-1 (n >= 2).
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> random_blocks(std::size_t n, Engine& rng) {
    std::vector<std::size_t> axes(n);
    std::iota(axes.begin(), axes.end(), 0);
    std::shuffle(axes.begin(), axes.end(), rng);
    const std::size_t i = pick(rng, 1, n - 1);
    const std::size_t j = pick(rng, 1, n - i);
    std::vector<std::size_t> I(axes.begin(), axes.begin() + i);
    std::vector<std::size_t> J(axes.begin() + i, axes.begin() + i + j);
    std::sort(I.begin(), I.end());
    std::sort(J.begin(), J.end());
    return {I, J};
}

OrliczBall ball_or_random(const SuiteOptions& o, std::size_t n, Engine& rng) {
    return o.ball ? *o.ball : random_ball(n, rng);
}

// ---------------------------------------------------------------------------
// Theta instances

struct ThetaDraw {
    ThetaInstance inst;
    ProperMeasure mu;
    std::string text;
};

ThetaInstance random_theta_instance(std::size_t n, Engine& rng) {
    OrliczBall K = random_ball(n, rng);
    if (coin(rng)) {
        const std::size_t z = pick(rng, 0, n - 1);
        const double R = K.radius(z);
        const double z1 = uni(rng, 0.0, 0.7) * R;
        const double z2 = z1 + uni(rng, 0.0, 1.0) * (1.1 * R - z1);
        return ThetaInstance::phi_pair(std::move(K), z, z1, z2);
    }
    std::vector<std::size_t> zs{pick(rng, 0, n - 1)};
    if (n == 3 && coin(rng, 0.3)) {
        std::size_t w = pick(rng, 0, n - 2);
        if (w >= zs[0]) ++w;
        zs.push_back(w);
        std::sort(zs.begin(), zs.end());
    }
    const auto box = radii_of(K, zs);
    CSet B = random_cset_in(box, rng);
    return ThetaInstance::psi_pair(std::move(K), zs, std::move(B));
}

/// Restriction of the domain along a random interval or positively inclined hyperplane.
std::optional<ThetaInstance> random_derivative(const ThetaInstance& inst, Engine& rng) {
    const auto R = inst.domain_radii();
    const std::size_t m = inst.dim();
    RestrictionSpec r;
    if (m >= 2 && coin(rng)) {
        r.kind = RestrictionSpec::Kind::hyperplane;
        r.axis = pick(rng, 0, m - 1);
        r.other_axis = pick(rng, 0, m - 2);
        if (r.other_axis >= r.axis) ++r.other_axis;
        r.lambda = uni(rng, 0.0, 2.0);
        r.c = uni(rng, -0.3, 0.3) * R[r.axis];
    } else {
        r.kind = RestrictionSpec::Kind::interval;
        r.axis = pick(rng, 0, m - 1);
        r.xa = uni(rng, 0.0, 0.5) * R[r.axis];
        r.xb = r.xa + uni(rng, 0.2, 1.0) * (1.05 * R[r.axis] - r.xa);
    }
    return inst.derive(r);
}

ThetaDraw random_theta(std::size_t n, bool derive, Engine& rng) {
    ThetaInstance inst = random_theta_instance(n, rng);
    if (derive && coin(rng))
        if (auto d = random_derivative(inst, rng)) inst = std::move(*d);
    const auto R = inst.domain_radii();
    ProperMeasure mu = random_proper_measure(R, rng);
    std::string text = inst.describe() + "|" + mu.describe();
    return {std::move(inst), std::move(mu), std::move(text)};
}

// ---------------------------------------------------------------------------
// na

Rows part_four_term(const SuiteOptions& o) {
    return fan_out(o, "four_term", count_or(o, 500), [&](Engine& rng, Rows& out) {
        const OrliczBall K = ball_or_random(o, pick(rng, 2, 3), rng);
        const auto [I, J] = random_blocks(K.dim(), rng);
        const CSet A = random_cset_in(radii_of(K, I), rng);
        const CSet B = random_cset_in(radii_of(K, J), rng);
        const auto r = four_term_check(K, A, I, B, J, quad(o));
        out.push_back(row("four_term", K.describe() + axes_text(I) + A.describe() + axes_text(J) + B.describe(), r));
    });
}

Rows part_four_term_cube(const SuiteOptions& o) {
    const OrliczBall K = OrliczBall::cube(3);
    return fan_out(o, "four_term.cube", count_or(o, 20), [&](Engine& rng, Rows& out) {
        const auto [I, J] = random_blocks(3, rng);
        const CSet A = random_cset_in(radii_of(K, I), rng);
        const CSet B = random_cset_in(radii_of(K, J), rng);
        const auto r = four_term_check(K, A, I, B, J, quad(o));
        out.push_back(equality_row("four_term.cube", K.describe() + axes_text(I) + A.describe() + axes_text(J) +
                                                         B.describe(),
                                   r.margin, 0.0, 1e-9));
    });
}

Rows part_na_cov_cube(const SuiteOptions& o) {
    const OrliczBall K = OrliczBall::cube(3);
    SamplerOptions so;
    so.workers = o.workers;
    const auto batch = sample_rejection(K, samples_or(o, 1000000), part_seed(o, "na_cov.cube.sample"), so);
    return sequential(o, "na_cov.cube", count_or(o, 10), [&](Engine& rng, Rows& out) {
        const auto [I, J] = random_blocks(3, rng);
        const auto f = random_monotone_fn(I.size(), radii_of(K, I), rng);
        const auto g = random_monotone_fn(J.size(), radii_of(K, J), rng);
        const auto c = na_covariance_test(batch, I, f, J, g);
        const std::string text = K.describe() + axes_text(I) + f.describe() + axes_text(J) + g.describe();
        if (c.verdict == Verdict::vacuous) out.push_back(row("na_cov.cube", text, 0.0, 0.0, Verdict::vacuous));
        else out.push_back(equality_row("na_cov.cube", text, c.estimate, 0.0, c.tol));
    });
}

Rows part_na_cov(const SuiteOptions& o) {
    return sequential(o, "na_cov", count_or(o, 20), [&](Engine& rng, Rows& out) {
        const OrliczBall K = ball_or_random(o, pick(rng, 2, 5), rng);
        SamplerOptions so;
        so.workers = o.workers;
        const auto batch = sample_rejection(K, samples_or(o, 200000), rng(), so);
        const auto [I, J] = random_blocks(K.dim(), rng);
        const auto f = random_monotone_fn(I.size(), radii_of(K, I), rng);
        const auto g = random_monotone_fn(J.size(), radii_of(K, J), rng);
        const auto c = na_covariance_test(batch, I, f, J, g);
        out.push_back(row("na_cov", K.describe() + axes_text(I) + f.describe() + axes_text(J) + g.describe(),
                          -c.estimate, c.tol, c.verdict));
    });
}

Rows part_l1_oracle(const SuiteOptions& o) {
    const OrliczBall K = OrliczBall::lp(2, 1.0);
    const std::string text = K.describe();
    const QuadratureSpec s = quad(o, 1024);
    const auto vol = integrate_quadrant(K, {}, Region{}, s);
    const auto ex = integrate_quadrant(K, [](std::span<const double> x) { return x[0]; }, Region{}, s);
    const auto exy = integrate_quadrant(K, [](std::span<const double> x) { return x[0] * x[1]; }, Region{}, s);
    const double EX = ex.value / vol.value;
    const double EXY = exy.value / vol.value;
    Rows out;
    out.push_back(equality_row("l1_oracle.volume", text, vol.value, 0.5, 1e-6));
    out.push_back(equality_row("l1_oracle.EX", text, EX, 1.0 / 3.0, 1e-6));
    out.push_back(equality_row("l1_oracle.EXY", text, EXY, 1.0 / 12.0, 1e-6));
    out.push_back(equality_row("l1_oracle.cov", text, EXY - EX * EX, -1.0 / 36.0, 1e-6));

    SamplerOptions so;
    so.workers = o.workers;
    so.full = true;
    const auto batch = sample_rejection(K, samples_or(o, 1000000), part_seed(o, "l1_oracle.sample"), so);
    const auto id = [](std::span<const double> x) { return x[0]; };
    const auto c = na_covariance_test(batch, {0}, id, {1}, id);
    out.push_back(equality_row("l1_oracle.mc_cov", text, c.estimate, -1.0 / 36.0, 4.0 * c.se));
    const auto m = estimate_mean(batch, [](std::span<const double> x) { return std::fabs(x[0]); });
    out.push_back(equality_row("l1_oracle.mc_EX", text, m.mean, 1.0 / 3.0, 4.0 * m.se));
    return out;
}

// ---------------------------------------------------------------------------
// theta and main

Rows part_theta_monotone(const SuiteOptions& o) {
    return fan_out(o, "theta.monotone", count_or(o, 100), [&](Engine& rng, Rows& out) {
        const auto d = random_theta(coin(rng, 0.75) ? 3 : 2, true, rng);
        const std::size_t m = d.inst.dim();
        std::vector<std::size_t> integrated;
        if (m >= 2 && coin(rng, 0.8)) integrated.push_back(pick(rng, 0, m - 1));
        const auto r = theta_monotonicity_check(d.inst, d.mu, integrated, 64, rng(), quad(o));
        out.push_back(row("theta.monotone", d.text + axes_text(integrated), r));
    });
}

Rows part_theta_slab(const SuiteOptions& o) {
    return fan_out(o, "theta.slab", count_or(o, 100), [&](Engine& rng, Rows& out) {
        const OrliczBall K = random_ball(pick(rng, 2, 3), rng);
        const std::size_t z = pick(rng, 0, K.dim() - 1);
        std::vector<std::size_t> xs;
        for (std::size_t i = 0; i < K.dim(); ++i)
            if (i != z) xs.push_back(i);
        const auto box = radii_of(K, xs);
        const CSet A = random_cset_in(box, rng);
        const ProperMeasure mu = random_proper_measure(box, rng);
        const auto r = slab_ratio_check(K, z, A, mu, 64, quad(o, 128));
        out.push_back(row("theta.slab", K.describe() + std::to_string(z) + A.describe() + mu.describe(), r));
    });
}

Rows part_main(const SuiteOptions& o) {
    return fan_out(o, "main", count_or(o, 200), [&](Engine& rng, Rows& out) {
        const auto d = random_theta(pick(rng, 2, 3), true, rng);
        auto box = d.inst.domain_radii();
        const double shrink = uni(rng, 0.4, 0.9);
        for (auto& v : box) v *= shrink;
        const CSet A = random_cset_in(box, rng);
        const auto r = theorem_main_check(d.inst, d.mu, A, quad(o));
        const std::string text = d.text + A.describe();
        out.push_back(row("main.upper", text, r.upper));
        out.push_back(row("main.lower", text, r.lower));
    });
}

// ---------------------------------------------------------------------------
// bm

Rows part_bm(const SuiteOptions& o, bool degenerate) {
    const std::string id = degenerate ? "bm.degenerate" : "bm";
    return fan_out(o, id, count_or(o, degenerate ? 50 : 500), [&](Engine& rng, Rows& out) {
        const OrliczBall K = random_ball(pick(rng, 3, 4), rng);
        const std::size_t xa = pick(rng, 0, K.dim() - 1);
        std::size_t ya = pick(rng, 0, K.dim() - 2);
        if (ya >= xa) ++ya;
        double x1 = uni(rng, 0.0, 1.0) * K.radius(xa), x2 = uni(rng, 0.0, 1.0) * K.radius(xa);
        double y1 = uni(rng, 0.0, 1.0) * K.radius(ya), y2 = uni(rng, 0.0, 1.0) * K.radius(ya);
        if (x1 > x2) std::swap(x1, x2);
        if (y1 > y2) std::swap(y1, y2);
        if (degenerate) x2 = x1;
        const auto nu = random_log_concave(K.dim() - 2, rng);
        const auto r = bm_four_point_check(K, xa, ya, x1, x2, y1, y2, nu, quad(o));
        const std::string text = K.describe() + std::to_string(xa) + std::to_string(ya) + num(x1) + num(x2) +
                                 num(y1) + num(y2) + nu.describe();
        if (degenerate) out.push_back(equality_row(id, text, r.margin, 0.0, 0.0));
        else out.push_back(row(id, text, r));
    });
}

// ---------------------------------------------------------------------------
// lp

double typical_radius(const RadialDensity& m) {
    switch (m.kind) {
        case RadialDensity::Kind::indicator: return std::pow(m.param, 1.0 / m.p);
        case RadialDensity::Kind::exp: return std::pow(2.0 / m.param, 1.0 / m.p);
        case RadialDensity::Kind::gaussian: return std::pow(2.0 * m.param, 1.0 / m.p);
    }
    return 1.0;
}

Rows part_lp_sections(const SuiteOptions& o) {
    Rows out;
    for (double p : {1.0, 2.0, 3.0}) {
        const std::string id = "lp.sections.p" + num(p);
        auto rows = fan_out(o, id, count_or(o, 50), [&](Engine& rng, Rows& r) {
            const std::size_t n = 3;
            const std::size_t k = pick(rng, 1, 2);
            RadialDensity m;
            m.kind = static_cast<RadialDensity::Kind>(pick(rng, 0, 2));
            m.param = uni(rng, 0.5, 2.0);
            m.p = p;
            const double ext = typical_radius(m);
            const RadiusSet A = random_radius_set(k, ext, rng);
            const RadiusSet B = random_radius_set(n - k, ext, rng);
            const auto rep = lp_section_inequalities(p, n, k, m, A, B);
            const std::string text = num(p) + m.describe() + std::to_string(k) + A.fn.describe() + num(A.level) +
                                     B.fn.describe() + num(B.level);
            static const char* names[4] = {"lp.f_ratio", "lp.g_monotone", "lp.cross_term", "lp.q_pair"};
            for (int c = 0; c < 4; ++c) r.push_back(row(names[c], text, rep.checks[c]));
            if (m.kind == RadialDensity::Kind::exp)
                r.push_back(equality_row("lp.exp_equality", text, rep.cross_term_gap, 0.0, 1e-12));
        });
        out.insert(out.end(), rows.begin(), rows.end());
    }
    return out;
}

RadialDensity radial(RadialDensity::Kind kind, double p) {
    RadialDensity m;
    m.kind = kind;
    m.param = 1.0;
    m.p = p;
    return m;
}

Rows part_lp_radius_na(const SuiteOptions& o) {
    Rows out;
    for (auto kind : {RadialDensity::Kind::indicator, RadialDensity::Kind::exp})
        for (double p : {1.0, 2.0})
            for (std::size_t n : {3, 4, 8}) {
                const RadialDensity m = radial(kind, p);
                const std::string id = "lp.radius_na." + m.describe() + ".n" + std::to_string(n);
                SamplerOptions so;
                so.workers = o.workers;
                const auto batch = sample_lp(n, m, samples_or(o, 1000000), part_seed(o, id + ".sample"), so);
                auto rows = sequential(o, id, count_or(o, 20), [&](Engine& rng, Rows& r) {
                    const auto [I, J] = random_blocks(n, rng);
                    const auto f = random_radius_fn(I.size(), rng);
                    const auto g = random_radius_fn(J.size(), rng);
                    const auto c = lp_radius_na_test(batch, I, f, J, g);
                    r.push_back(row("lp.radius_na", m.describe() + std::to_string(n) + axes_text(I) + f.describe() +
                                                        axes_text(J) + g.describe(),
                                    -c.estimate, c.tol, c.verdict));
                });
                out.insert(out.end(), rows.begin(), rows.end());
            }
    return out;
}

/// Covariance of f(x_I), g(x_J) under the uniform law on the quadrant of the
/// unit l_p ball of R^3, by brute force over grid^3 cell midpoints.
double grid_covariance(double p, const std::vector<std::size_t>& I, const RadiusFn& f,
                       const std::vector<std::size_t>& J, const RadiusFn& g, std::size_t grid) {
    const double h = 1.0 / static_cast<double>(grid);
    std::vector<double> pw(grid);
    for (std::size_t i = 0; i < grid; ++i) pw[i] = std::pow((static_cast<double>(i) + 0.5) * h, p);
    double n = 0.0, sf = 0.0, sg = 0.0, sfg = 0.0;
    double x[3], xi[3], xj[3];
    for (std::size_t a = 0; a < grid; ++a)
        for (std::size_t b = 0; b < grid; ++b) {
            if (pw[a] + pw[b] > 1.0) break;
            for (std::size_t c = 0; c < grid; ++c) {
                if (pw[a] + pw[b] + pw[c] > 1.0) break;
                x[0] = (static_cast<double>(a) + 0.5) * h;
                x[1] = (static_cast<double>(b) + 0.5) * h;
                x[2] = (static_cast<double>(c) + 0.5) * h;
                for (std::size_t k = 0; k < I.size(); ++k) xi[k] = x[I[k]];
                for (std::size_t k = 0; k < J.size(); ++k) xj[k] = x[J[k]];
                const double u = f(std::span<const double>(xi, I.size()));
                const double v = g(std::span<const double>(xj, J.size()));
                n += 1.0;
                sf += u;
                sg += v;
                sfg += u * v;
            }
        }
    return sfg / n - (sf / n) * (sg / n);
}

Rows part_lp_grid_oracle(const SuiteOptions& o) {
    Rows out;
    for (double p : {1.0, 2.0}) {
        const RadialDensity m = radial(RadialDensity::Kind::indicator, p);
        const std::string id = "lp.grid_oracle.p" + num(p);
        SamplerOptions so;
        so.workers = o.workers;
        const auto batch = sample_lp(3, m, samples_or(o, 1000000), part_seed(o, id + ".sample"), so);
        auto rows = fan_out(o, id, count_or(o, 4), [&](Engine& rng, Rows& r) {
            const auto [I, J] = random_blocks(3, rng);
            const auto f = random_radius_fn(I.size(), rng);
            const auto g = random_radius_fn(J.size(), rng);
            const double exact = grid_covariance(p, I, f, J, g, 256);
            const auto c = lp_radius_na_test(batch, I, f, J, g);
            r.push_back(equality_row("lp.grid_oracle",
                                     m.describe() + axes_text(I) + f.describe() + axes_text(J) + g.describe(),
                                     c.estimate, exact, 1e-3));
        });
        out.insert(out.end(), rows.begin(), rows.end());
    }
    return out;
}

// ---------------------------------------------------------------------------
// lemmas

/// A random density on [0, 1] of the proper-measure form.
ConcavePower unit_density(Engine& rng) {
    ConcavePower f = random_concave_power(1.0, rng);
    f.lo = std::min(f.lo, 0.2);
    f.hi = std::max(f.hi, 0.9);
    return f;
}

Rows part_ratio_compare(const SuiteOptions& o) {
    return fan_out(o, "lemma.ratio_compare", count_or(o, 200), [&](Engine& rng, Rows& out) {
        const double u = uni(rng, 0.0, 2.0), b = uni(rng, 0.0, 3.0);
        const bool expo = coin(rng);
        auto g = [u](double x) { return 1.0 + u * x; };
        auto f = [=](double x) { return (1.0 + u * x) * (expo ? std::exp(-b * x) : std::max(0.0, 1.0 - 0.3 * b * x)); };
        const ConcavePower mu = unit_density(rng);
        const double a = uni(rng, 0.0, 0.6);
        const double c = uni(rng, a, 0.8);
        const double bb = uni(rng, a + 0.01, 1.0);
        const double d = uni(rng, std::max(bb, c + 0.01), 1.0);
        const auto r = ratio_compare(f, g, [&](double x) { return mu(x); }, a, bb, c, d, quad(o));
        const std::string text = num(u) + num(b) + (expo ? "e" : "l") + mu.describe() + num(a) + num(bb) + num(c) +
                                 num(d);
        out.push_back(row("lemma.ratio_compare", text, r.lhs - r.rhs, r.tol, r.verdict));
        const Verdict fv = r.verdict == Verdict::vacuous ? Verdict::vacuous
                                                         : (r.fact_consistent ? Verdict::pass : Verdict::fail);
        out.push_back(row("lemma.ratio_fact", text, r.fact_consistent ? 0.0 : -1.0, 0.0, fv));
    });
}

Rows part_fraction(const SuiteOptions& o) {
    return fan_out(o, "lemma.fraction", count_or(o, 10), [&](Engine& rng, Rows& out) {
        WorstOf w;
        std::string text;
        for (int k = 0; k < 100; ++k) {
            const double a = uni(rng, 0.0, 2.0), b = uni(rng, 0.0, 2.0);
            const double c = uni(rng, 0.05, 2.0), d = uni(rng, 0.05, 2.0);
            const bool ok = fraction_equivalence(a, b, c, d, 1e-12);
            text += num(a) + num(b) + num(c) + num(d);
            w.see(row("", "", ok ? 0.0 : -1.0, 0.0, ok ? Verdict::pass : Verdict::fail));
        }
        out.push_back(w.result("lemma.fraction", text));
    });
}

Rows part_pairing(const SuiteOptions& o) {
    return fan_out(o, "lemma.pairing", count_or(o, 100), [&](Engine& rng, Rows& out) {
        WorstOf w;
        std::string text;
        QuadratureSpec s = quad(o, 64);
        for (int k = 0; k < 100; ++k) {
            const double u = uni(rng, 0.0, 2.0), b = uni(rng, 0.0, 3.0);
            const double v = uni(rng, 0.0, 2.0), c = uni(rng, 0.0, 3.0);
            const ConcavePower mu = unit_density(rng);
            auto q = [u](double x) { return 1.0 + u * x; };
            auto p = [u, b](double x) { return (1.0 + u * x) * std::exp(-b * x); };
            auto g = [v](double x) { return 1.0 + v * x; };
            auto f = [v, c](double x) { return (1.0 + v * x) * (1.0 + c * x); };
            const auto r = pairing_check(p, q, f, g, [&](double x) { return mu(x); }, 0.0, 1.0, s);
            text += num(u) + num(b) + num(v) + num(c) + mu.describe();
            w.see(row("", "", r.rhs - r.lhs, r.tol, r.verdict));
        }
        out.push_back(w.result("lemma.pairing", text));
    });
}

Rows part_additivity(const SuiteOptions& o) {
    return fan_out(o, "lemma.additivity", count_or(o, 100), [&](Engine& rng, Rows& out) {
        const OrliczBall K = random_ball(pick(rng, 2, 3), rng);
        std::vector<std::size_t> all(K.dim());
        std::iota(all.begin(), all.end(), 0);
        const CSet A = random_cset_in(K.radii(), rng);
        Region in, outr;
        in.factors.push_back(RegionFactor::in(A, all));
        outr.factors.push_back(RegionFactor::out(A, all));
        const auto s = quad(o);
        const auto a = integrate_quadrant(K, {}, in, s);
        const auto b = integrate_quadrant(K, {}, outr, s);
        const auto t = integrate_quadrant(K, {}, Region{}, s);
        out.push_back(equality_row("lemma.additivity", K.describe() + A.describe(), a.value + b.value, t.value,
                                   2.0 * (a.error + b.error + t.error) + 1e-12));
    });
}

Rows part_refinement(const SuiteOptions& o) {
    return fan_out(o, "lemma.refinement", count_or(o, 50), [&](Engine& rng, Rows& out) {
        const OrliczBall K = random_ball(pick(rng, 2, 3), rng);
        std::vector<std::size_t> all(K.dim());
        std::iota(all.begin(), all.end(), 0);
        const CSet A = random_cset_in(K.radii(), rng);
        Region r;
        r.factors.push_back(RegionFactor::in(A, all));
        const auto s = quad(o);
        auto s2 = s;
        s2.nodes *= 2;
        const auto a = integrate_quadrant(K, {}, r, s);
        const auto b = integrate_quadrant(K, {}, r, s2);
        out.push_back(equality_row("lemma.refinement", K.describe() + A.describe(), b.value, a.value,
                                   4.0 * a.error + 1e-12));
    });
}

Rows part_eta(const SuiteOptions& o) {
    return fan_out(o, "lemma.eta", count_or(o, 100), [&](Engine& rng, Rows& out) {
        const auto d = random_theta(pick(rng, 2, 3), true, rng);
        const auto R = d.inst.domain_radii();
        const auto s = quad(o, 128);
        double bound = 1.0;
        if (d.inst.kind() == ThetaInstance::Kind::psi)
            for (std::size_t a = 0; a < d.inst.ball().dim(); ++a)
                if (std::find(d.inst.x_axes().begin(), d.inst.x_axes().end(), a) == d.inst.x_axes().end())
                    bound *= d.inst.ball().radius(a);
        WorstOf t1, t2, t3;
        std::vector<double> x(R.size()), y(R.size());
        for (int k = 0; k < 100; ++k) {
            for (std::size_t a = 0; a < R.size(); ++a) {
                x[a] = uni(rng, 0.0, 1.05) * R[a];
                y[a] = x[a] + (coin(rng) ? uni(rng, 0.0, 0.3) * R[a] : 0.0);
            }
            const auto ex = d.inst.eta(x, s);
            const auto ey = d.inst.eta(y, s);
            const double tol = verdict_tol({ex.error, ey.error});
            const bool finite = std::isfinite(ex.eta1) && std::isfinite(ex.eta2);
            const double m1 = finite ? bound - ex.eta1 : -kInf;
            t1.see(row("", "", m1, tol, judge(m1, tol)));
            const double m2 = std::min(ex.eta1 - ey.eta1, ex.eta2 - ey.eta2);
            t2.see(row("", "", m2, tol, judge(m2, tol)));
            const double m3 = std::min(ex.eta1 - ex.eta2, ex.eta2);
            t3.see(row("", "", m3, tol, judge(m3, tol)));
        }
        out.push_back(t1.result("lemma.eta_bounded", d.text));
        out.push_back(t2.result("lemma.eta_monotone", d.text));
        out.push_back(t3.result("lemma.eta_order", d.text));
    });
}

/// Instances whose domain has dimension >= 2.
ThetaDraw random_theta_2d(Engine& rng) {
    for (;;) {
        auto d = random_theta(3, false, rng);
        if (d.inst.dim() >= 2) return d;
    }
}

Rows part_interval_shift(const SuiteOptions& o) {
    return fan_out(o, "lemma.interval_shift", count_or(o, 100), [&](Engine& rng, Rows& out) {
        const auto d = random_theta_2d(rng);
        const auto R = d.inst.domain_radii();
        const double y0 = uni(rng, 0.0, 1.0) * R[1];
        const double xa = uni(rng, 0.0, 0.5) * R[0];
        const double xb = xa + uni(rng, 0.05, 0.5) * R[0];
        const double xc = xa + uni(rng, 0.0, 0.4) * R[0];
        const double xd = std::max(xb, xc + 0.05 * R[0]) + uni(rng, 0.0, 0.3) * R[0];
        const auto m = interval_shift_check(d.inst, d.mu, y0, xa, xb, xc, xd, quad(o));
        out.push_back(row("lemma.interval_shift", d.text + num(y0) + num(xa) + num(xb) + num(xc) + num(xd), m));
    });
}

Rows part_interval_raise(const SuiteOptions& o) {
    return fan_out(o, "lemma.interval_raise", count_or(o, 50), [&](Engine& rng, Rows& out) {
        const auto d = random_theta_2d(rng);
        const double R = d.inst.domain_radii()[0];
        const double xa = uni(rng, 0.0, 0.6) * R;
        const double xb = xa + uni(rng, 0.05, 0.6) * R;
        const auto m = interval_raise_check(d.inst, d.mu, xa, xb, 32, quad(o, 128));
        out.push_back(row("lemma.interval_raise", d.text + num(xa) + num(xb), m));
    });
}

Rows part_ratio_identity(const SuiteOptions& o) {
    return fan_out(o, "lemma.ratio_identity", count_or(o, 100), [&](Engine& rng, Rows& out) {
        const auto d = random_theta(pick(rng, 2, 3), false, rng);
        const auto R = d.inst.domain_radii();
        std::vector<std::size_t> axes(R.size());
        std::iota(axes.begin(), axes.end(), 0);
        const CSet A = random_cset_in(R, rng);
        std::vector<double> cut(R.size());
        for (std::size_t a = 0; a < R.size(); ++a) cut[a] = uni(rng, 0.2, 0.7) * R[a];
        const CSet Ap = A.clipped(cut);
        Region D, Dp, diff;
        D.factors.push_back(RegionFactor::in(A, axes));
        Dp.factors.push_back(RegionFactor::in(Ap, axes));
        diff.factors = {RegionFactor::in(A, axes), RegionFactor::out(Ap, axes)};
        auto [d1, d2] = d.inst.outputs(D, d.mu, {});
        auto [p1, p2] = d.inst.outputs(Dp, d.mu, {});
        auto [q1, q2] = d.inst.outputs(diff, d.mu, {});
        const auto res = integrate_outputs(d.inst.ball(), d.inst.domain({}), {d1, d2, p1, p2, q1, q2}, quad(o));
        const ThetaValue direct = make_ratio(res[5], res[4]);
        IntegralResult num_r, den_r;
        num_r.value = res[1].value - res[3].value;
        num_r.error = res[1].error + res[3].error;
        den_r.value = res[0].value - res[2].value;
        den_r.error = res[0].error + res[2].error;
        const ThetaValue arith = make_ratio(num_r, den_r);
        const std::string text = d.text + A.describe() + Ap.describe();
        if (!direct.defined || !arith.defined) {
            out.push_back(row("lemma.ratio_identity", text, 0.0, 0.0, Verdict::vacuous));
            return;
        }
        out.push_back(equality_row("lemma.ratio_identity", text, direct.value, arith.value,
                                   verdict_tol({direct.error, arith.error})));
    });
}

Rows part_antisymmetry(const SuiteOptions& o) {
    return fan_out(o, "lemma.antisymmetry", count_or(o, 50), [&](Engine& rng, Rows& out) {
        const OrliczBall K = random_ball(pick(rng, 2, 3), rng);
        const auto [I, J] = random_blocks(K.dim(), rng);
        const CSet A = random_cset_in(radii_of(K, I), rng);
        const CSet B = random_cset_in(radii_of(K, J), rng);
        const auto s = quad(o);
        const auto r = four_term_check(K, A, I, B, J, s);
        // Same masses integrated one region at a time, with the roles of A and A' exchanged.
        auto mass = [&](bool a_in, bool b_in) {
            Region g;
            g.factors.push_back(a_in ? RegionFactor::in(A, I) : RegionFactor::out(A, I));
            g.factors.push_back(b_in ? RegionFactor::in(B, J) : RegionFactor::out(B, J));
            return integrate_quadrant(K, {}, g, s);
        };
        const auto cb = mass(false, true), cbc = mass(false, false), ab = mass(true, true), abc = mass(true, false);
        const double swapped = cbc.value * ab.value - cb.value * abc.value;
        const double tol = verdict_tol({r.tol, ab.value * cbc.error + cbc.value * ab.error +
                                                   cb.value * abc.error + abc.value * cb.error});
        out.push_back(equality_row("lemma.antisymmetry",
                                   K.describe() + axes_text(I) + A.describe() + axes_text(J) + B.describe(),
                                   r.margin + swapped, 0.0, tol));
    });
}

/// Counts points y of a box grid where membership in the restricted body
/// disagrees with membership of the embedded point in the original slab or
/// hyperplane section, skipping points within 1e-9 of either boundary.
std::size_t restriction_mismatches(const OrliczBall& K, const Restriction& r, std::size_t points) {
    const std::size_t d = r.dim();
    std::vector<double> box(d);
    if (const auto* b = std::get_if<OrliczBall>(&r.body))
        for (std::size_t k = 0; k < d; ++k) box[k] = 1.1 * b->radius(k);
    else
        for (std::size_t k = 0, q = 0; k < r.source_dim; ++k)
            if (r.normalized.kind == RestrictionSpec::Kind::interval || k != r.normalized.axis) box[q++] = 1.1 * K.radius(k);
    const auto per = static_cast<std::size_t>(std::ceil(std::pow(static_cast<double>(points), 1.0 / static_cast<double>(d))));
    std::size_t total = 1;
    for (std::size_t k = 0; k < d; ++k) total *= per;
    std::size_t bad = 0;
    std::vector<double> y(d);
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::size_t rest = idx;
        for (std::size_t k = 0; k < d; ++k) {
            y[k] = box[k] * (static_cast<double>(rest % per) + 0.5) / static_cast<double>(per);
            rest /= per;
        }
        const auto x = r.embed(y);
        const double lv = K.level_sum(x);
        if (std::fabs(lv - 1.0) < 1e-9) continue;
        bool want = lv <= 1.0 && std::all_of(x.begin(), x.end(), [](double v) { return v >= 0.0; });
        if (r.normalized.kind == RestrictionSpec::Kind::interval) {
            const double xi = x[r.normalized.axis];
            if (std::fabs(xi - r.normalized.xb) < 1e-9) continue;
            want = want && xi <= r.normalized.xb;
        }
        if (const auto* b = std::get_if<OrliczBall>(&r.body))
            if (std::fabs(b->level_sum(y) - 1.0) < 1e-9) continue;
        if (want != r.quadrant_contains(y)) ++bad;
    }
    return bad;
}

Rows part_restriction(const SuiteOptions& o) {
    return fan_out(o, "lemma.restriction", count_or(o, 100), [&](Engine& rng, Rows& out) {
        const OrliczBall K = random_ball(pick(rng, 2, 3), rng);
        const std::size_t n = K.dim();
        Restriction r;
        std::string text = K.describe();
        if (coin(rng)) {
            const std::size_t i = pick(rng, 0, n - 1);
            const double xa = uni(rng, 0.0, 0.8) * K.radius(i);
            const double xb = xa + uni(rng, 0.1, 1.0) * K.radius(i);
            r = restrict_interval(K, i, xa, xb);
            text += "I" + std::to_string(i) + num(xa) + num(xb);
        } else {
            RestrictionSpec s;
            s.kind = RestrictionSpec::Kind::hyperplane;
            s.axis = pick(rng, 0, n - 1);
            s.other_axis = pick(rng, 0, n - 2);
            if (s.other_axis >= s.axis) ++s.other_axis;
            s.lambda = uni(rng, 0.0, 2.0);
            s.c = uni(rng, -0.5, 0.8) * K.radius(s.axis);
            r = restrict_hyperplane(K, s);
            text += "H" + std::to_string(s.axis) + std::to_string(s.other_axis) + num(s.lambda) + num(s.c);
        }
        if (r.is_empty()) {
            out.push_back(row("lemma.restriction", text, 0.0, 0.0, Verdict::vacuous));
            return;
        }
        const double bad = static_cast<double>(restriction_mismatches(K, r, 10000));
        out.push_back(row("lemma.restriction", text, -bad, 0.0, judge(-bad, 0.0)));
    });
}

Rows part_properize(const SuiteOptions& o) {
    YoungMix degenerate;
    degenerate.power = 0.0;
    degenerate.linear = 1.0;
    degenerate.cube = 1.0;
    degenerate.capped = 1.0;
    degenerate.flat = 1.0;
    return sequential(o, "lemma.properize", count_or(o, 20), [&](Engine& rng, Rows& out) {
        OrliczBall K = random_ball(pick(rng, 2, 3), rng, degenerate);
        while (K.is_proper()) K = random_ball(K.dim(), rng, degenerate);
        SamplerOptions so;
        so.workers = o.workers;
        const auto in_K = sample_rejection(K, samples_or(o, 200000), rng(), so);
        for (double eps : {0.1, 0.01}) {
            const OrliczBall Kp = properize(K, eps);
            const std::string text = K.describe() + num(eps);
            std::size_t lost = 0;
            for (std::size_t i = 0; i < in_K.rows(); ++i)
                if (!Kp.contains(in_K.row(i))) ++lost;
            const double N = static_cast<double>(in_K.rows());
            const double frac = static_cast<double>(lost) / N;
            const double se = std::sqrt(frac * (1.0 - frac) / N);
            out.push_back(row("lemma.properize_volume", text, eps - frac, 3.0 * se, judge(eps - frac, 3.0 * se)));
            const auto in_Kp = sample_rejection(Kp, 10000, rng(), so);
            double outside = 0.0;
            for (std::size_t i = 0; i < in_Kp.rows(); ++i)
                if (!K.contains(in_Kp.row(i))) outside += 1.0;
            out.push_back(row("lemma.properize_subset", text, -outside, 0.0, judge(-outside, 0.0)));
        }
    });
}

Rows part_monotone_fn(const SuiteOptions& o) {
    return fan_out(o, "lemma.monotone_fn", count_or(o, 20), [&](Engine& rng, Rows& out) {
        const std::size_t d = pick(rng, 1, 3);
        const std::vector<double> box(d, 1.0);
        const auto f = random_monotone_fn(d, box, rng);
        double bad = 0.0;
        std::vector<double> x(d), y(d);
        for (int k = 0; k < 10000; ++k) {
            for (std::size_t a = 0; a < d; ++a) {
                x[a] = uni(rng, 0.0, 1.2);
                y[a] = x[a] + (coin(rng) ? uni(rng, 0.0, 0.5) : 0.0);
            }
            if (f(x) > f(y)) bad += 1.0;
        }
        out.push_back(row("lemma.monotone_fn", f.describe(), -bad, 0.0, judge(-bad, 0.0)));
    });
}

Rows part_radius_fn(const SuiteOptions& o) {
    return fan_out(o, "lemma.radius_fn", count_or(o, 20), [&](Engine& rng, Rows& out) {
        const std::size_t d = pick(rng, 1, 3);
        const auto f = random_radius_fn(d, rng);
        double bad = 0.0;
        std::vector<double> x(d), tx(d);
        for (int k = 0; k < 10000; ++k) {
            const double t = uni(rng, 1.0, 10.0);
            for (std::size_t a = 0; a < d; ++a) {
                x[a] = uni(rng, 0.0, 1.0);
                tx[a] = t * x[a];
            }
            if (f(tx) < f(x)) bad += 1.0;
        }
        out.push_back(row("lemma.radius_fn", f.describe(), -bad, 0.0, judge(-bad, 0.0)));
    });
}

Rows part_stair(const SuiteOptions& o) {
    return fan_out(o, "lemma.stair", count_or(o, 20), [&](Engine& rng, Rows& out) {
        const std::vector<double> box{1.0, 1.0};
        const CSet A = random_cset_in(box, rng);
        const auto m = static_cast<unsigned>(pick(rng, 1, 5));
        const StairSet coarse = stair_approximate(A, m);
        const StairSet fine = stair_approximate(A, m + 1);
        double bad = 0.0;
        for (int k = 0; k < 10000; ++k) {
            const double x = uni(rng, 0.0, 1.2), y = uni(rng, 0.0, 1.2);
            const double p[2] = {x, y};
            const bool a = A.contains(p), f = fine.contains(x, y), c = coarse.contains(x, y);
            if ((a && !f) || (f && !c)) bad += 1.0;
        }
        out.push_back(row("lemma.stair", A.describe() + std::to_string(m), -bad, 0.0, judge(-bad, 0.0)));
    });
}

// ---------------------------------------------------------------------------
// moments

std::vector<double> random_coefficients(std::size_t n, Engine& rng) {
    std::vector<double> a(n);
    for (auto& v : a) v = uni(rng, -1.0, 1.0);
    return a;
}

std::string coef_text(const MomentSpec& s) {
    std::string t = "p" + std::to_string(s.p);
    for (double v : s.a) t += num(v) + ",";
    return t;
}

Rows part_moments_p2(const SuiteOptions& o) {
    return fan_out(o, "moments.p2", count_or(o, 20), [&](Engine& rng, Rows& out) {
        const OrliczBall K = random_ball(pick(rng, 1, 3), rng);
        MomentSpec s{random_coefficients(K.dim(), rng), 2};
        const auto r = moment_compare(K, s, quad(o, 128));
        out.push_back(equality_row("moments.p2", K.describe() + coef_text(s), r.lhs, r.rhs, 1e-9));
    });
}

Rows part_moments_oracle(const SuiteOptions& o) {
    const OrliczBall K = OrliczBall::lp(2, 1.0);
    const MomentSpec s{{1.0, 1.0}, 4};
    const auto r = moment_compare(K, s, quad(o, 1024));
    const std::string text = K.describe() + coef_text(s);
    return {equality_row("moments.l1_lhs", text, r.lhs, 0.2, 1e-6), equality_row("moments.l1_rhs", text, r.rhs, 0.3, 1e-6),
            row("moments.l1_order", text, r)};
}

Rows part_moments_random(const SuiteOptions& o) {
    return fan_out(o, "moments.random", count_or(o, 50), [&](Engine& rng, Rows& out) {
        const OrliczBall K = random_ball(3, rng);
        const auto a = random_coefficients(3, rng);
        for (unsigned p : {4u, 6u}) {
            const MomentSpec s{a, p};
            out.push_back(row("moments.random", K.describe() + coef_text(s), moment_compare(K, s, quad(o, 128))));
        }
    });
}

Rows part_moments_sampled(const SuiteOptions& o) {
    return sequential(o, "moments.sampled", count_or(o, 10), [&](Engine& rng, Rows& out) {
        const OrliczBall K = random_ball(pick(rng, 4, 6), rng);
        SamplerOptions so;
        so.workers = o.workers;
        so.full = true;
        const auto batch = sample_rejection(K, samples_or(o, 200000), rng(), so);
        const MomentSpec s{random_coefficients(K.dim(), rng), 4};
        out.push_back(row("moments.sampled", K.describe() + coef_text(s), moment_compare_sampled(batch, s, rng())));
    });
}

// ---------------------------------------------------------------------------
// concentration

Rows part_concentration(const SuiteOptions& o) {
    Rows out;
    for (std::size_t n : {16, 64}) {
        Engine rng(part_seed(o, "concentration.balls." + std::to_string(n)));
        YoungMix mix;
        mix.cube = 0.0;
        std::vector<OrliczBall> balls{OrliczBall::cube(n, 0.5), random_ball(n, rng, mix), random_ball(n, rng, mix)};
        for (std::size_t b = 0; b < balls.size(); ++b) {
            ConcentrationOptions c;
            c.N = samples_or(o, 100000);
            c.seed = sub_seed(part_seed(o, "concentration"), n * 8 + b);
            c.workers = o.workers;
            const auto rep = run_concentration(balls[b], c);
            const std::string text = balls[b].describe();
            for (const auto& pt : rep.curve) {
                const double m = pt.bound - pt.ci_hi;
                out.push_back(row("concentration.n" + std::to_string(n), text + num(pt.t), m, 0.0, judge(m, 0.0)));
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------

using Part = std::function<Rows(const SuiteOptions&)>;

const std::map<std::string, Part>& parts() {
    static const std::map<std::string, Part> p{
        {"four_term", part_four_term},
        {"four_term.cube", part_four_term_cube},
        {"na_cov", part_na_cov},
        {"na_cov.cube", part_na_cov_cube},
        {"l1_oracle", part_l1_oracle},
        {"theta.monotone", part_theta_monotone},
        {"theta.slab", part_theta_slab},
        {"bm", [](const SuiteOptions& o) { return part_bm(o, false); }},
        {"bm.degenerate", [](const SuiteOptions& o) { return part_bm(o, true); }},
        {"lp.sections", part_lp_sections},
        {"lp.radius_na", part_lp_radius_na},
        {"lp.grid_oracle", part_lp_grid_oracle},
        {"lemma.ratio_compare", part_ratio_compare},
        {"lemma.fraction", part_fraction},
        {"lemma.pairing", part_pairing},
        {"lemma.additivity", part_additivity},
        {"lemma.refinement", part_refinement},
        {"lemma.eta", part_eta},
        {"lemma.interval_shift", part_interval_shift},
        {"lemma.interval_raise", part_interval_raise},
        {"lemma.ratio_identity", part_ratio_identity},
        {"lemma.antisymmetry", part_antisymmetry},
        {"lemma.restriction", part_restriction},
        {"lemma.properize", part_properize},
        {"lemma.monotone_fn", part_monotone_fn},
        {"lemma.radius_fn", part_radius_fn},
        {"lemma.stair", part_stair},
        {"main", part_main},
        {"moments.p2", part_moments_p2},
        {"moments.l1_oracle", part_moments_oracle},
        {"moments.random", part_moments_random},
        {"moments.sampled", part_moments_sampled},
        {"concentration", part_concentration},
    };
    return p;
}

const std::map<std::string, std::vector<std::string>>& suites() {
    static const std::map<std::string, std::vector<std::string>> s{
        {"na", {"four_term.cube", "four_term", "na_cov.cube", "na_cov", "l1_oracle"}},
        {"theta", {"theta.monotone", "theta.slab"}},
        {"bm", {"bm", "bm.degenerate"}},
        {"lp", {"lp.sections", "lp.radius_na", "lp.grid_oracle"}},
        {"lemmas",
         {"lemma.ratio_compare", "lemma.fraction", "lemma.pairing", "lemma.additivity", "lemma.refinement",
          "lemma.eta", "lemma.interval_shift", "lemma.interval_raise", "lemma.ratio_identity", "lemma.antisymmetry",
          "lemma.restriction", "lemma.properize", "lemma.monotone_fn", "lemma.radius_fn", "lemma.stair"}},
        {"main", {"main"}},
        {"moments", {"moments.p2", "moments.l1_oracle", "moments.random", "moments.sampled"}},
        {"concentration", {"concentration"}},
    };
    return s;
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"na", "theta", "bm", "lp", "lemmas", "main", "moments", "concentration"};
    return names;
}

const std::vector<std::string>& suite_parts(const std::string& suite) {
    const auto it = suites().find(suite);
    if (it == suites().end()) throw std::invalid_argument("unknown suite \"" + suite + "\"");
    return it->second;
}

std::vector<CheckRow> run_part(const std::string& part, const SuiteOptions& opt) {
    const auto it = parts().find(part);
    if (it == parts().end()) throw std::invalid_argument("unknown suite part \"" + part + "\"");
    auto rows = it->second(opt);
    if (opt.tol_floor != 0.0)
        for (auto& r : rows) {
            r.tol += opt.tol_floor;
            if (r.verdict != Verdict::vacuous) r.verdict = judge(r.margin, r.tol);
        }
    return rows;
}

std::vector<CheckRow> run_suite(const std::string& suite, const SuiteOptions& opt) {
    std::vector<CheckRow> out;
    for (const auto& p : suite_parts(suite)) {
        auto rows = run_part(p, opt);
        out.insert(out.end(), rows.begin(), rows.end());
    }
    return out;
}

}  // namespace orlicz
