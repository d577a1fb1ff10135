#include "orlicz/young.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace orlicz {

double PowerTerm::eval(double x) const {
    const double b = slope * x + offset;
    if (b <= 0.0) return 0.0;
    if (p == 1.0) return coef * b;
    if (p == 2.0) return coef * b * b;
    return coef * std::pow(b, p);
}

double PowerTerm::derivative(double x) const {
    const double b = slope * x + offset;
    if (b < 0.0) return 0.0;
    if (p == 1.0) return coef * slope;
    if (b == 0.0) return 0.0;
    return coef * p * slope * std::pow(b, p - 1.0);
}

double Segment::eval(double x) const {
    double v = base + slope * (x - x0);
    for (const auto& t : terms) v += t.eval(x);
    return v;
}

double Segment::derivative(double x) const {
    double d = slope;
    for (const auto& t : terms) d += t.derivative(x);
    return d;
}

YoungFunction YoungFunction::power(double p, double scale) {
    if (!(p >= 1.0) || !std::isfinite(p)) throw std::invalid_argument("power Young function needs p >= 1");
    if (!(scale > 0.0) || !std::isfinite(scale)) throw std::invalid_argument("power Young function needs scale > 0");
    Segment s;
    if (p == 1.0) {
        s.slope = 1.0 / scale;
    } else {
        s.terms.push_back(PowerTerm{1.0, 1.0 / scale, 0.0, p});
    }
    YoungFunction f;
    f.segs_.push_back(std::move(s));
    return f;
}

YoungFunction YoungFunction::cube(double width) {
    if (!(width > 0.0) || !std::isfinite(width)) throw std::invalid_argument("cube width must be positive");
    YoungFunction f;
    f.segs_.push_back(Segment{});
    f.cap_ = width;
    return f;
}

YoungFunction YoungFunction::from_points(const std::vector<std::pair<double, double>>& points,
                                         Interp interp, double p) {
    if (points.empty()) throw std::invalid_argument("piece list is empty");
    if (points.front().first != 0.0) throw std::invalid_argument("piece list must start at x = 0");
    if (interp == Interp::power && !(p >= 1.0)) throw std::invalid_argument("power interpolation needs p >= 1");
    std::size_t finite = points.size();
    for (std::size_t k = 0; k < points.size(); ++k) {
        const auto [x, v] = points[k];
        if (!std::isfinite(x) || x < 0.0) throw std::invalid_argument("breakpoint x must be finite and nonnegative");
        if (k > 0 && !(x > points[k - 1].first)) throw std::invalid_argument("breakpoint x must be strictly increasing");
        if (std::isnan(v) || v < 0.0) throw std::invalid_argument("breakpoint values must be nonnegative");
        if (std::isinf(v) && finite == points.size()) finite = k;
        if (!std::isinf(v) && finite < points.size()) throw std::invalid_argument("a finite value follows +inf");
    }
    if (finite == 0) throw std::invalid_argument("f(0) must be finite");

    YoungFunction f;
    if (finite == 1) {
        f.segs_.push_back(Segment{0.0, points[0].second, 0.0, {}});
    }
    for (std::size_t k = 0; k + 1 < finite; ++k) {
        const auto [xa, va] = points[k];
        const auto [xb, vb] = points[k + 1];
        Segment s;
        s.x0 = xa;
        s.base = va;
        if (interp == Interp::linear || p == 1.0) {
            s.slope = (vb - va) / (xb - xa);
        } else {
            s.terms.push_back(PowerTerm{vb - va, 1.0 / (xb - xa), -xa / (xb - xa), p});
        }
        f.segs_.push_back(std::move(s));
    }
    f.cap_ = finite < points.size() ? points[finite].first : kInf;
    return f;
}

YoungFunction YoungFunction::from_segments(std::vector<Segment> segments, double cap) {
    if (segments.empty() || segments.front().x0 != 0.0) throw std::invalid_argument("segments must start at 0");
    for (std::size_t k = 1; k < segments.size(); ++k)
        if (!(segments[k].x0 > segments[k - 1].x0)) throw std::invalid_argument("segment starts must increase");
    if (std::isnan(cap) || cap < 0.0) throw std::invalid_argument("cap must be nonnegative");
    YoungFunction f;
    f.segs_ = std::move(segments);
    f.cap_ = cap;
    while (f.segs_.size() > 1 && f.segs_.back().x0 >= cap) f.segs_.pop_back();
    return f;
}

std::size_t YoungFunction::locate(double x) const {
    std::size_t k = segs_.size() - 1;
    while (k > 0 && segs_[k].x0 > x) --k;
    return k;
}

double YoungFunction::operator()(double x) const {
    if (x > cap_) return kInf;
    return segs_[locate(x)].eval(x);
}

double YoungFunction::right_derivative(double x) const {
    if (x >= cap_) return kInf;
    return segs_[locate(x)].derivative(x);
}

double YoungFunction::left_derivative(double x) const {
    if (x > cap_) return kInf;
    std::size_t k = locate(x);
    if (k > 0 && segs_[k].x0 == x) --k;
    return segs_[k].derivative(x);
}

double YoungFunction::inverse(double v) const {
    if (std::isnan(v) || v < 0.0) throw std::domain_error("inverse needs a nonnegative level");
    if (v == 0.0) {
        // Exact zero set; bisection would stall on underflowing powers.
        for (std::size_t k = 0; k < segs_.size(); ++k) {
            const Segment& s = segs_[k];
            const double end = k + 1 < segs_.size() ? segs_[k + 1].x0 : cap_;
            if (s.eval(s.x0) > 0.0) return s.x0;
            if (s.slope > 0.0) return s.x0;
            double first_positive = end;
            for (const auto& t : s.terms) {
                if (t.coef <= 0.0 || t.slope <= 0.0) continue;
                first_positive = std::min(first_positive, std::max(s.x0, -t.offset / t.slope));
            }
            if (first_positive < end) return first_positive;
            if (!std::isfinite(end)) return kInf;
        }
        return cap_;
    }
    for (std::size_t k = 0; k < segs_.size(); ++k) {
        const Segment& s = segs_[k];
        const bool last = k + 1 == segs_.size();
        const double end = last ? cap_ : segs_[k + 1].x0;
        if (std::isfinite(end) && s.eval(end) <= v) {
            if (last) return end;
            continue;
        }
        const double fa = s.eval(s.x0);
        if (fa > v) return s.x0;
        if (s.is_linear()) {
            if (s.slope <= 0.0) return end;
            return std::min(end, s.x0 + (v - fa) / s.slope);
        }
        double lo = s.x0;
        double hi = end;
        if (!std::isfinite(hi)) {
            hi = std::max(1.0, 2.0 * lo);
            int guard = 0;
            while (s.eval(hi) <= v) {
                lo = hi;
                hi *= 2.0;
                if (++guard > 2000) return kInf;
            }
        }
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi) break;
            if (s.eval(mid) <= v) lo = mid; else hi = mid;
        }
        return lo;
    }
    return cap_;
}

bool YoungFunction::is_proper() const { return !std::isfinite(cap_) && zero_end() == 0.0; }

YoungFunction YoungFunction::compose_affine(double lambda, double c) const {
    if (!(lambda > 0.0)) throw std::invalid_argument("compose_affine needs lambda > 0");
    if (c < 0.0) throw std::invalid_argument("compose_affine needs c >= 0");
    if (c > cap_) throw std::invalid_argument("compose_affine: argument offset lies beyond the cap");
    YoungFunction g;
    for (std::size_t k = 0; k < segs_.size(); ++k) {
        const Segment& s = segs_[k];
        const double end = k + 1 < segs_.size() ? segs_[k + 1].x0 : cap_;
        if (end <= c && k + 1 < segs_.size()) continue;
        const double t0 = std::max(0.0, (s.x0 - c) / lambda);
        Segment n;
        n.x0 = g.segs_.empty() ? 0.0 : t0;
        // At t0 the argument is s.x0 exactly; recomputing it would round.
        const bool at_start = n.x0 == t0 && s.x0 >= c;
        n.base = at_start ? s.base : s.base + s.slope * (lambda * n.x0 + c - s.x0);
        n.slope = s.slope * lambda;
        for (const auto& t : s.terms) n.terms.push_back(PowerTerm{t.coef, t.slope * lambda, t.slope * c + t.offset, t.p});
        if (!g.segs_.empty() && !(n.x0 > g.segs_.back().x0)) continue;
        g.segs_.push_back(std::move(n));
    }
    g.cap_ = std::isfinite(cap_) ? (cap_ - c) / lambda : kInf;
    return g;
}

YoungFunction YoungFunction::affine_value(double shift, double factor) const {
    YoungFunction g = *this;
    for (auto& s : g.segs_) {
        s.base = (s.base - shift) * factor;
        s.slope *= factor;
        for (auto& t : s.terms) t.coef *= factor;
    }
    return g;
}

YoungFunction YoungFunction::plus(const YoungFunction& other) const {
    const double cap = std::min(cap_, other.cap_);
    std::vector<double> starts;
    for (const auto& s : segs_) starts.push_back(s.x0);
    for (const auto& s : other.segs_) starts.push_back(s.x0);
    std::sort(starts.begin(), starts.end());
    starts.erase(std::unique(starts.begin(), starts.end()), starts.end());
    YoungFunction g;
    g.cap_ = cap;
    for (double x : starts) {
        if (x > 0.0 && x >= cap) break;
        const Segment& a = segs_[locate(x)];
        const Segment& b = other.segs_[other.locate(x)];
        Segment n;
        n.x0 = x;
        n.base = a.base + a.slope * (x - a.x0) + b.base + b.slope * (x - b.x0);
        n.slope = a.slope + b.slope;
        n.terms = a.terms;
        n.terms.insert(n.terms.end(), b.terms.begin(), b.terms.end());
        g.segs_.push_back(std::move(n));
    }
    return g;
}

YoungFunction YoungFunction::capped(double x) const {
    if (x < 0.0) throw std::invalid_argument("cap must be nonnegative");
    return from_segments(segs_, std::min(cap_, x));
}

YoungFunction YoungFunction::splice_linear(double x, double value, double slope) const {
    std::vector<Segment> out;
    for (const auto& s : segs_)
        if (s.x0 < x) out.push_back(s);
    out.push_back(Segment{x, value, slope, {}});
    if (out.front().x0 != 0.0) out.insert(out.begin(), segs_.front());
    return from_segments(std::move(out), kInf);
}

YoungFunction YoungFunction::ramp_prefix(double s, double value) const {
    if (!(s > 0.0)) throw std::invalid_argument("ramp length must be positive");
    std::vector<Segment> out;
    out.push_back(Segment{0.0, 0.0, value / s, {}});
    if (s < cap_) {
        const std::size_t k = locate(s);
        Segment head = segs_[k];
        head.base = head.base + head.slope * (s - head.x0);
        head.x0 = s;
        out.push_back(std::move(head));
        for (std::size_t j = k + 1; j < segs_.size(); ++j) out.push_back(segs_[j]);
    }
    return from_segments(std::move(out), cap_);
}

std::vector<double> YoungFunction::breakpoints() const {
    std::vector<double> b;
    for (const auto& s : segs_) b.push_back(s.x0);
    if (std::isfinite(cap_)) b.push_back(cap_);
    return b;
}

std::string YoungFunction::describe() const {
    std::string out = "young{";
    char buf[160];
    for (const auto& s : segs_) {
        std::snprintf(buf, sizeof buf, "[%.17g:%.17g,%.17g", s.x0, s.base, s.slope);
        out += buf;
        for (const auto& t : s.terms) {
            std::snprintf(buf, sizeof buf, ";%.17g*(%.17g*x+%.17g)^%.17g", t.coef, t.slope, t.offset, t.p);
            out += buf;
        }
        out += "]";
    }
    std::snprintf(buf, sizeof buf, "cap=%.17g}", cap_);
    return out + buf;
}

bool midpoint_convex(const YoungFunction& f, double a, double b) {
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(0.5 * (a + b));
    if (std::isinf(fa) || std::isinf(fb)) return true;
    if (std::isinf(fm)) return false;
    return fm <= 0.5 * (fa + fb) + 1e-12 * std::max(1.0, fa + fb);
}

ValidationReport validate_young(const YoungFunction& f, std::size_t grid) {
    ValidationReport rep;
    auto fail = [&rep](std::string inv, std::string msg, std::optional<std::pair<double, double>> pr = {}) {
        rep.ok = false;
        rep.issues.push_back(ValidationIssue{std::move(inv), std::move(msg), pr});
    };

    if (f(0.0) != 0.0) fail("f(0) = 0", "f(0) is not zero");
    if (!(f.cap() > 0.0)) fail("finite somewhere off 0", "f is +inf on (0, inf)");

    std::vector<double> bps = f.breakpoints();
    double last = 0.0;
    for (double b : bps) last = std::max(last, b);
    double reach = 1.0;
    const double r2 = f.cap() > 0.0 ? f.inverse(2.0) : 0.0;
    if (std::isfinite(r2)) reach = std::max(reach, 1.5 * r2);
    const double hi = std::max(2.0 * last, reach);

    std::vector<double> pts;
    for (std::size_t k = 0; k <= grid; ++k) pts.push_back(hi * static_cast<double>(k) / static_cast<double>(grid));
    for (double b : bps) pts.push_back(b);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    bool positive = false;
    for (std::size_t k = 0; k < pts.size(); ++k) {
        const double v = f(pts[k]);
        if (std::isnan(v) || v < 0.0) {
            fail("nonnegative", "negative or NaN value", std::make_pair(pts[k], pts[k]));
            break;
        }
        if (v > 0.0) positive = true;
        if (k > 0 && v < f(pts[k - 1])) {
            fail("nondecreasing", "value decreases", std::make_pair(pts[k - 1], pts[k]));
            break;
        }
    }
    if (!positive && !(f(1e6 * std::max(1.0, hi)) > 0.0)) fail("exists x: f(x) != 0", "f vanishes identically");

    for (std::size_t i = 0; i < pts.size() && rep.ok; ++i) {
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            if (!midpoint_convex(f, pts[i], pts[j])) {
                fail("midpoint convexity", "f((a+b)/2) > (f(a)+f(b))/2", std::make_pair(pts[i], pts[j]));
                break;
            }
        }
    }
    return rep;
}

}  // namespace orlicz
