#include "orlicz/ball.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace orlicz {

namespace {

// Removes rounding residue at the origin left by re-anchoring segments.
YoungFunction pin_zero(const YoungFunction& f) {
    const double v = f(0.0);
    if (v == 0.0) return f;
    return f.affine_value(v, 1.0);
}

}  // namespace

OrliczBall::OrliczBall(std::vector<YoungFunction> young) : young_(std::move(young)) {
    if (young_.empty()) throw std::invalid_argument("an Orlicz ball needs at least one Young function");
    for (std::size_t i = 0; i < young_.size(); ++i) {
        const auto rep = validate_young(young_[i], 48);
        if (!rep.ok)
            throw std::invalid_argument("Young function " + std::to_string(i) + " invalid: " +
                                        rep.issues.front().invariant);
        const double r = young_[i].inverse(1.0);
        if (!std::isfinite(r) || !(r > 0.0))
            throw std::invalid_argument("axis radius " + std::to_string(i) + " is not finite");
        radius_.push_back(r);
    }
}

OrliczBall OrliczBall::lp(std::size_t n, double p) {
    return OrliczBall(std::vector<YoungFunction>(n, YoungFunction::power(p)));
}

OrliczBall OrliczBall::cube(std::size_t n, double half_width) {
    return OrliczBall(std::vector<YoungFunction>(n, YoungFunction::cube(half_width)));
}

OrliczBall OrliczBall::box(const std::vector<double>& half_widths) {
    std::vector<YoungFunction> f;
    for (double w : half_widths) f.push_back(YoungFunction::cube(w));
    return OrliczBall(std::move(f));
}

double OrliczBall::level_sum(std::span<const double> x) const {
    double s = 0.0;
    for (std::size_t i = 0; i < young_.size(); ++i) s += young_[i](std::fabs(x[i]));
    return s;
}

bool OrliczBall::quadrant_contains(std::span<const double> x) const {
    for (double v : x)
        if (v < 0.0) return false;
    return contains(x);
}

bool OrliczBall::is_proper() const {
    return std::all_of(young_.begin(), young_.end(), [](const YoungFunction& f) { return f.is_proper(); });
}

OrliczBall OrliczBall::sub_ball(const std::vector<std::size_t>& axes) const {
    std::vector<YoungFunction> f;
    for (std::size_t a : axes) f.push_back(young_.at(a));
    return OrliczBall(std::move(f));
}

std::string OrliczBall::describe() const {
    std::string out = "ball[";
    for (const auto& f : young_) out += f.describe();
    return out + "]";
}

bool membership(const OrliczBall& K, std::span<const double> x) {
    if (x.size() != K.dim())
        throw std::invalid_argument("point has dimension " + std::to_string(x.size()) + ", ball has " +
                                    std::to_string(K.dim()));
    return K.contains(x);
}

bool IntervalProduct::quadrant_contains(std::span<const double> y) const {
    for (std::size_t i = 0; i < widths.size(); ++i)
        if (y[i] < 0.0 || y[i] > widths[i]) return false;
    return true;
}

std::size_t Restriction::dim() const {
    return normalized.kind == RestrictionSpec::Kind::interval ? source_dim : source_dim - 1;
}

std::vector<double> Restriction::embed(std::span<const double> y) const {
    if (y.size() != dim()) throw std::invalid_argument("embed: dimension mismatch");
    if (normalized.kind == RestrictionSpec::Kind::interval) {
        std::vector<double> x(y.begin(), y.end());
        x[normalized.axis] += normalized.xa;
        return x;
    }
    std::vector<double> x(source_dim, 0.0);
    std::size_t q = 0;
    for (std::size_t k = 0; k < source_dim; ++k) {
        if (k == normalized.axis) continue;
        x[k] = y[q++];
    }
    x[normalized.axis] = normalized.lambda * x[normalized.other_axis] + normalized.c;
    return x;
}

bool Restriction::quadrant_contains(std::span<const double> y) const {
    if (const auto* b = std::get_if<OrliczBall>(&body)) return b->quadrant_contains(y);
    if (const auto* p = std::get_if<IntervalProduct>(&body)) return p->quadrant_contains(y);
    return false;
}

Restriction restrict_interval(const OrliczBall& K, std::size_t axis, double xa, double xb) {
    if (axis >= K.dim()) throw std::invalid_argument("restrict_interval: axis out of range");
    if (!(xa >= 0.0) || !(xb > xa) || !std::isfinite(xb))
        throw std::invalid_argument("restrict_interval: need 0 <= xa < xb < inf");
    Restriction r;
    r.source_dim = K.dim();
    r.normalized.kind = RestrictionSpec::Kind::interval;
    r.normalized.axis = axis;
    r.normalized.xa = xa;
    r.normalized.xb = xb;

    const double c = K.young(axis)(xa);
    if (c > 1.0) {
        r.body = EmptyBody{};
        return r;
    }
    if (c == 1.0) {
        IntervalProduct p;
        for (std::size_t k = 0; k < K.dim(); ++k) p.widths.push_back(k == axis ? 0.0 : K.young(k).zero_end());
        r.body = std::move(p);
        return r;
    }
    const double factor = 1.0 / (1.0 - c);
    std::vector<YoungFunction> f;
    for (std::size_t k = 0; k < K.dim(); ++k) {
        if (k == axis) {
            f.push_back(pin_zero(K.young(k).compose_affine(1.0, xa).affine_value(c, factor).capped(xb - xa)));
        } else {
            f.push_back(K.young(k).affine_value(0.0, factor));
        }
    }
    r.body = OrliczBall(std::move(f));
    return r;
}

Restriction restrict_hyperplane(const OrliczBall& K, const RestrictionSpec& spec) {
    const std::size_t n = K.dim();
    if (spec.axis >= n || spec.other_axis >= n || spec.axis == spec.other_axis)
        throw std::invalid_argument("restrict_hyperplane: need two distinct axes in range");
    if (!(spec.lambda >= 0.0) || !std::isfinite(spec.lambda))
        throw std::invalid_argument("restrict_hyperplane: slope must be nonnegative");
    if (!std::isfinite(spec.c)) throw std::invalid_argument("restrict_hyperplane: offset must be finite");

    Restriction r;
    r.source_dim = n;
    r.normalized = spec;
    r.normalized.kind = RestrictionSpec::Kind::hyperplane;
    if (spec.c < 0.0) {
        if (spec.lambda == 0.0) {
            r.body = EmptyBody{};
            return r;
        }
        r.normalized.axis = spec.other_axis;
        r.normalized.other_axis = spec.axis;
        r.normalized.lambda = 1.0 / spec.lambda;
        r.normalized.c = -spec.c / spec.lambda;
    }
    const std::size_t i = r.normalized.axis;
    const std::size_t j = r.normalized.other_axis;
    const double lambda = r.normalized.lambda;
    const double c = r.normalized.c;
    const double fic = K.young(i)(c);
    if (fic > 1.0) {
        r.body = EmptyBody{};
        return r;
    }
    if (fic == 1.0) {
        IntervalProduct p;
        for (std::size_t k = 0; k < n; ++k) {
            if (k == i) continue;
            if (k == j) p.widths.push_back(lambda > 0.0 ? 0.0 : K.young(j).zero_end());
            else p.widths.push_back(K.young(k).zero_end());
        }
        r.body = std::move(p);
        return r;
    }
    const double factor = 1.0 / (1.0 - fic);
    std::vector<YoungFunction> f;
    for (std::size_t k = 0; k < n; ++k) {
        if (k == i) continue;
        if (k == j) {
            YoungFunction fn = lambda > 0.0 ? K.young(i).compose_affine(lambda, c).plus(K.young(j)).affine_value(fic, factor)
                                            : K.young(j).affine_value(0.0, factor);
            f.push_back(pin_zero(fn));
        } else {
            f.push_back(K.young(k).affine_value(0.0, factor));
        }
    }
    r.body = OrliczBall(std::move(f));
    return r;
}

OrliczBall properize(const OrliczBall& K, double eps, ProperizeReport* report) {
    if (!(eps > 0.0) || !std::isfinite(eps)) throw std::invalid_argument("properize: eps must be positive");
    const std::size_t n = K.dim();
    const double nd = static_cast<double>(n);
    ProperizeReport rep;
    rep.changed.assign(n, false);
    if (K.is_proper()) {
        if (report) *report = rep;
        return K;
    }

    rep.eps_abs = eps * quadrant_volume(K).value;
    rep.M = 1.0;
    if (n > 1) {
        rep.M = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<std::size_t> rest;
            for (std::size_t k = 0; k < n; ++k)
                if (k != i) rest.push_back(k);
            rep.M = std::max(rep.M, quadrant_volume(K.sub_ball(rest)).value);
        }
    }
    rep.c = kInf;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = K.young(i).inverse(1.0 / (2.0 * nd));
        rep.c = std::min(rep.c, K.young(i).right_derivative(t));
    }
    // The shell bound needs n * delta well below 1/2; the cap only shrinks the loss.
    rep.delta = std::min(rep.c * rep.eps_abs / (2.0 * rep.M * nd * nd), 1.0 / (4.0 * nd));
    rep.delta_inf = rep.eps_abs / (2.0 * nd * rep.M);

    std::vector<YoungFunction> out;
    for (std::size_t i = 0; i < n; ++i) {
        YoungFunction g = K.young(i);
        if (g.zero_end() > 0.0) {
            const double s = g.inverse(rep.delta);
            g = g.ramp_prefix(s, rep.delta);
            rep.changed[i] = true;
        }
        if (std::isfinite(g.cap())) {
            const double r = g.cap();
            const double v = g(r);
            if (v >= 1.0) {
                g = g.splice_linear(r, v, std::max(g.left_derivative(r), v / r));
            } else {
                const double d = std::min(rep.delta_inf, 0.5 * r);
                const double a = r - d;
                const double ga = g(a);
                g = g.splice_linear(a, ga, (2.0 - ga) / d);
            }
            rep.changed[i] = true;
        }
        out.push_back(std::move(g));
    }
    if (report) *report = rep;
    return OrliczBall(std::move(out));
}

namespace {

double convolve_volume(const OrliczBall& K, double level, std::size_t bins, double* log_out) {
    const double h = level / static_cast<double>(bins);
    std::vector<double> V(bins + 1, 1.0), next(bins + 1), G(bins + 1);
    double log_scale = 0.0;
    for (std::size_t k = 0; k < K.dim(); ++k) {
        const YoungFunction& f = K.young(k);
        for (std::size_t l = 0; l <= bins; ++l) G[l] = f.inverse(h * static_cast<double>(l));
        for (std::size_t j = 0; j <= bins; ++j) {
            double acc = G[0] * V[j];
            for (std::size_t l = 1; l <= j; ++l) acc += (G[l] - G[l - 1]) * 0.5 * (V[j - l] + V[j - l + 1]);
            next[j] = acc;
        }
        const double m = *std::max_element(next.begin(), next.end());
        if (!(m > 0.0)) {
            *log_out = -kInf;
            return 0.0;
        }
        for (std::size_t j = 0; j <= bins; ++j) V[j] = next[j] / m;
        log_scale += std::log(m);
    }
    *log_out = std::log(V[bins]) + log_scale;
    return std::exp(*log_out);
}

}  // namespace

VolumeEstimate quadrant_volume(const OrliczBall& K, double level, std::size_t bins) {
    if (bins < 8) throw std::invalid_argument("quadrant_volume: need at least 8 bins");
    VolumeEstimate est;
    if (level < 0.0) {
        est.log_value = -kInf;
        return est;
    }
    if (level == 0.0) {
        double v = 1.0;
        for (std::size_t k = 0; k < K.dim(); ++k) v *= K.young(k).zero_end();
        est.value = v;
        est.log_value = std::log(v);
        return est;
    }
    double log_half = 0.0;
    const double coarse = convolve_volume(K, level, bins / 2, &log_half);
    est.value = convolve_volume(K, level, bins, &est.log_value);
    est.error = std::fabs(est.value - coarse);
    return est;
}

}  // namespace orlicz
