#include "orlicz/random_instances.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace orlicz {

namespace {

double uni(Engine& rng, double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }

std::size_t pick(Engine& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

}  // namespace

YoungFunction random_young(Engine& rng, const YoungMix& mix) {
    std::discrete_distribution<int> kind({mix.power, mix.linear, mix.cube, mix.capped, mix.flat});
    switch (kind(rng)) {
        case 0: return YoungFunction::power(uni(rng, 1.0, 4.0), uni(rng, 0.6, 1.5));
        case 1: {
            std::vector<std::pair<double, double>> pts{{0.0, 0.0}};
            const std::size_t knots = pick(rng, 1, 3);
            double x = 0.0, v = 0.0;
            double slope = uni(rng, 0.0, 1.0) < 0.3 ? 0.0 : uni(rng, 0.2, 1.0);
            for (std::size_t k = 0; k < knots; ++k) {
                const double dx = uni(rng, 0.2, 0.6);
                x += dx;
                v += slope * dx;
                pts.emplace_back(x, v);
                slope += uni(rng, 0.2, 2.0);
            }
            pts.emplace_back(x + 1.0, v + slope);
            return YoungFunction::from_points(pts);
        }
        case 2: return YoungFunction::cube(uni(rng, 0.5, 1.5));
        case 3: {
            const auto f = YoungFunction::power(uni(rng, 1.0, 3.0), uni(rng, 0.6, 1.5));
            return f.capped(f.inverse(1.0) * uni(rng, 0.5, 1.3));
        }
        default: {
            const double z = uni(rng, 0.1, 0.5);
            return YoungFunction::from_points({{0.0, 0.0}, {z, 0.0}, {z + uni(rng, 0.4, 1.0), 1.0}}, Interp::power,
                                              uni(rng, 1.0, 3.0));
        }
    }
}

OrliczBall random_ball(std::size_t n, Engine& rng, const YoungMix& mix) {
    std::vector<YoungFunction> f;
    for (std::size_t i = 0; i < n; ++i) f.push_back(random_young(rng, mix));
    return OrliczBall(std::move(f));
}

CSet random_cset_in(std::span<const double> box, Engine& rng, std::size_t max_corners) {
    const std::size_t j = pick(rng, 1, std::max<std::size_t>(1, max_corners));
    return random_cset(box.size(), j, box, rng());
}

ConcavePower random_concave_power(double R, Engine& rng) {
    ConcavePower f;
    f.m = static_cast<unsigned>(pick(rng, 1, 3));
    f.lo = uni(rng, 0.0, 1.0) < 0.5 ? 0.0 : uni(rng, 0.0, 0.3) * R;
    f.hi = f.lo + (R - f.lo) * uni(rng, 0.5, 1.0);
    const std::size_t lines = pick(rng, 0, 2);
    for (std::size_t k = 0; k < lines; ++k) {
        const double v0 = uni(rng, 0.2, 1.0);
        const double v1 = uni(rng, 0.0, 1.0);
        const double b = (v1 - v0) / (f.hi - f.lo);
        f.lines.emplace_back(v0 - b * f.lo, b);
    }
    return f;
}

ProperMeasure random_proper_measure(std::span<const double> radii, Engine& rng) {
    if (radii.empty()) throw std::invalid_argument("random_proper_measure: empty domain");
    ProperMeasure mu;
    mu.fx = random_concave_power(radii[0], rng);
    if (radii.size() > 1) mu.fy = random_concave_power(radii[1], rng);
    return mu;
}

LogConcaveWeight random_log_concave(std::size_t d, Engine& rng) {
    LogConcaveWeight w;
    for (std::size_t i = 0; i < d; ++i) {
        w.a.push_back(uni(rng, -2.0, 2.0));
        w.b.push_back(uni(rng, 0.0, 3.0));
        w.c.push_back(uni(rng, 0.0, 1.0));
    }
    return w;
}

ScalarMap random_scalar_map(Engine& rng) {
    ScalarMap s;
    s.kind = static_cast<ScalarMap::Kind>(pick(rng, 0, 4));
    s.param = uni(rng, 0.2, 1.5);
    return s;
}

MonotoneFn random_monotone_fn(std::size_t d, std::span<const double> box, Engine& rng) {
    const ScalarMap outer = random_scalar_map(rng);
    switch (pick(rng, 0, 2)) {
        case 0: return MonotoneFn(MonotoneFn::CSetComplement{random_cset_in(box, rng)}, d, outer);
        case 1: {
            MonotoneFn::Polynomial p;
            const std::size_t terms = pick(rng, 1, 3);
            for (std::size_t k = 0; k < terms; ++k) {
                p.coef.push_back(uni(rng, 0.1, 1.0));
                std::vector<unsigned> e(d);
                for (auto& v : e) v = static_cast<unsigned>(pick(rng, 0, 2));
                p.exponents.push_back(e);
            }
            return MonotoneFn(p, d, outer);
        }
        default: {
            std::vector<double> w(d);
            for (auto& v : w) v = uni(rng, 0.1, 1.0);
            return MonotoneFn(MonotoneFn::MaxScaled{w}, d, outer);
        }
    }
}

namespace {

RadiusFn::Base random_radius_base(std::size_t d, Engine& rng) {
    auto row = [&] {
        std::vector<double> a(d);
        for (auto& v : a) v = uni(rng, -1.0, 1.0);
        return a;
    };
    if (pick(rng, 0, 1) == 0) return RadiusFn::AbsLinear{row()};
    RadiusFn::HomogeneousMax h;
    const std::size_t rows = pick(rng, 1, 3);
    for (std::size_t k = 0; k < rows; ++k) h.rows.push_back(row());
    return h;
}

}  // namespace

RadiusFn random_radius_fn(std::size_t d, Engine& rng) {
    const ScalarMap outer = random_scalar_map(rng);
    return RadiusFn(random_radius_base(d, rng), d, outer);
}

RadiusSet random_radius_set(std::size_t d, double extent, Engine& rng) {
    // An outer map only relabels levels, so the plain homogeneous form covers the family.
    RadiusFn fn(random_radius_base(d, rng), d);
    double peak = 0.0;
    for (std::size_t j = 0; j <= 32; ++j) {
        const double t = static_cast<double>(j) / 32.0;
        const std::vector<double> x = d == 1 ? std::vector<double>{1.0} : std::vector<double>{t, 1.0 - t};
        peak = std::max(peak, fn(x));
    }
    return RadiusSet{fn, uni(rng, 0.15, 0.85) * extent * std::max(peak, 1e-3)};
}

}  // namespace orlicz
