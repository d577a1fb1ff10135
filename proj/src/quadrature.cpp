#include "orlicz/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "orlicz/parallel.hpp"

namespace orlicz {

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::fail: return "fail";
        case Verdict::vacuous: return "vacuous";
    }
    return "?";
}

RegionFactor RegionFactor::in(CSet set, std::vector<std::size_t> axes) {
    if (set.dim() != axes.size()) throw std::invalid_argument("RegionFactor: set/axes dimension mismatch");
    RegionFactor f;
    f.kind = Kind::cset;
    f.set = std::move(set);
    f.axes = std::move(axes);
    return f;
}

RegionFactor RegionFactor::out(CSet set, std::vector<std::size_t> axes) {
    RegionFactor f = in(std::move(set), std::move(axes));
    f.kind = Kind::cset_complement;
    return f;
}

RegionFactor RegionFactor::interval(std::size_t axis, double lo, double hi) {
    RegionFactor f;
    f.kind = Kind::interval;
    f.axes = {axis};
    f.lo = lo;
    f.hi = hi;
    return f;
}

RegionFactor RegionFactor::sublevel(std::vector<std::size_t> axes, double level) {
    RegionFactor f;
    f.kind = Kind::level;
    f.axes = std::move(axes);
    f.level = level;
    return f;
}

namespace {

constexpr std::size_t kMaxAxes = 16;

// |I_h - I_2h|, or half of a coarser difference when that is larger: a
// first-order rule halves the difference per level, so a small finest
// difference next to a large coarser one is a cancellation, not convergence.
double level_error(const std::vector<double>& by_level) {
    double e = std::fabs(by_level[0] - by_level[1]);
    double scale = 0.5;
    for (std::size_t k = 1; k + 1 < by_level.size(); ++k, scale *= 0.5)
        e = std::max(e, scale * std::fabs(by_level[k] - by_level[k + 1]));
    return e;
}

struct Gathered {
    std::array<double, kMaxAxes> v{};
    std::size_t n = 0;
    std::span<const double> span() const { return {v.data(), n}; }
};

Gathered gather(const std::vector<std::size_t>& axes, std::span<const double> x) {
    if (axes.size() > kMaxAxes) throw std::invalid_argument("region factor spans too many axes");
    Gathered g;
    g.n = axes.size();
    for (std::size_t k = 0; k < axes.size(); ++k) g.v[k] = x[axes[k]];
    return g;
}

bool factor_contains(const OrliczBall& K, const RegionFactor& f, std::span<const double> x) {
    switch (f.kind) {
        case RegionFactor::Kind::cset: return f.set.contains(gather(f.axes, x).span());
        case RegionFactor::Kind::cset_complement: return !f.set.contains(gather(f.axes, x).span());
        case RegionFactor::Kind::interval: return x[f.axes[0]] >= f.lo && x[f.axes[0]] <= f.hi;
        case RegionFactor::Kind::level: {
            double t = 0.0;
            for (std::size_t a : f.axes) t += K.young(a)(x[a]);
            return t <= f.level;
        }
    }
    return false;
}

}  // namespace

bool Region::contains(const OrliczBall& K, std::span<const double> x) const {
    for (const auto& f : factors)
        if (!factor_contains(K, f, x)) return false;
    return true;
}

std::string Region::describe() const {
    std::string s = "region[";
    for (const auto& f : factors) {
        switch (f.kind) {
            case RegionFactor::Kind::cset: s += "in:"; break;
            case RegionFactor::Kind::cset_complement: s += "out:"; break;
            case RegionFactor::Kind::interval: s += "iv:"; break;
            case RegionFactor::Kind::level: s += "lv:"; break;
        }
        for (std::size_t a : f.axes) s += std::to_string(a) + ".";
        if (f.kind == RegionFactor::Kind::cset || f.kind == RegionFactor::Kind::cset_complement) s += f.set.describe();
        else if (f.kind == RegionFactor::Kind::interval) s += std::to_string(f.lo) + "," + std::to_string(f.hi);
        else s += std::to_string(f.level);
        s += ";";
    }
    return s + "]";
}

double verdict_tol(std::initializer_list<double> errors) {
    double s = 0.0;
    for (double e : errors) s += e;
    return 3.0 * s + 1e-12;
}

namespace {

class Integrator {
public:
    Integrator(const OrliczBall& K, const Domain& dom, const std::vector<Output>& outs, const QuadratureSpec& spec)
        : K_(K), outs_(outs), spec_(spec) {
        const std::size_t n = K.dim();
        base_.assign(n, 0.0);
        double used = 0.0;
        if (!dom.fixed.empty() && dom.fixed.size() != n) throw std::invalid_argument("quadrature: fixed size mismatch");
        for (std::size_t i = 0; i < n; ++i) {
            if (!dom.fixed.empty() && dom.fixed[i]) {
                const double v = *dom.fixed[i];
                if (v < 0.0) empty_ = true;
                base_[i] = v;
                used += K.young(i)(v);
            } else {
                free_.push_back(i);
            }
        }
        L_ = dom.level - used;
        if (!(L_ >= 0.0)) empty_ = true;
        if (free_.size() > 4) throw std::invalid_argument("quadrature: more than 4 free coordinates; use the samplers");
        for (const auto& o : outs_) {
            if (!o.weight_breaks.empty() && o.weight_breaks.size() != n)
                throw std::invalid_argument("quadrature: weight_breaks needs one list per axis");
            for (const auto& f : o.region.factors)
                for (std::size_t a : f.axes)
                    if (a >= n) throw std::invalid_argument("quadrature: region axis out of range");
        }
        if (!empty_) {
            for (std::size_t a : free_) {
                const double r = K.young(a).inverse(L_);
                if (!std::isfinite(r)) throw std::invalid_argument("quadrature: unbounded domain");
                R_.push_back(r);
            }
        }
    }

    std::vector<IntegralResult> run() {
        if (spec_.nodes < 8) throw std::invalid_argument("quadrature: need at least 8 nodes per axis");
        if (spec_.levels < 2) throw std::invalid_argument("quadrature: need at least 2 levels");
        if ((spec_.nodes >> (spec_.levels - 1)) < 2) throw std::invalid_argument("quadrature: too many levels");
        const std::size_t m = outs_.size();
        std::vector<IntegralResult> res(m);
        for (std::size_t lv = 0; lv < spec_.levels; ++lv) {
            std::size_t evals = 0;
            const auto vals = level(spec_.nodes >> lv, &evals);
            for (std::size_t k = 0; k < m; ++k) res[k].by_level.push_back(vals[k]);
            if (lv == 0)
                for (auto& r : res) r.nodes_used = evals;
        }
        for (auto& r : res) {
            r.value = r.by_level[0];
            r.error = level_error(r.by_level);
        }
        return res;
    }

private:
    std::vector<double> level(std::size_t N, std::size_t* evals) {
        const std::size_t m = outs_.size();
        std::vector<double> total(m, 0.0);
        if (empty_) return total;
        const std::size_t d = free_.size();
        if (d == 0) {
            for (std::size_t k = 0; k < m; ++k) total[k] = point_value(k, base_);
            *evals = m;
            return total;
        }
        if (spec_.rule == Rule::midpoint_tensor) return tensor(N, evals);

        // Outer axes: uniform edges plus aligned static breakpoints.
        std::vector<std::vector<double>> edges(d - 1);
        for (std::size_t k = 0; k + 1 < d; ++k) edges[k] = axis_edges(k, N);
        const std::size_t tasks = d == 1 ? 1 : edges[0].size() - 1;
        std::vector<std::vector<double>> part(tasks, std::vector<double>(m, 0.0));
        std::vector<std::size_t> count(tasks, 0);
        parallel_for(tasks, spec_.workers, [&](std::size_t t) {
            std::vector<double> x = base_;
            std::vector<std::size_t> idx(d - 1, 0);
            if (d > 1) idx[0] = t;
            std::vector<double> acc(m, 0.0);
            std::size_t ev = 0;
            for (;;) {
                outer_cell(N, edges, idx, x, acc, ev);
                // odometer over axes 1..d-2
                std::size_t k = d - 1;
                bool done = true;
                while (k > 1) {
                    --k;
                    if (++idx[k] + 1 < edges[k].size()) {
                        done = false;
                        break;
                    }
                    idx[k] = 0;
                }
                if (done) break;
            }
            part[t] = acc;
            count[t] = ev;
        });
        std::size_t ev = 0;
        for (std::size_t t = 0; t < tasks; ++t) {
            for (std::size_t k = 0; k < m; ++k) total[k] += part[t][k];
            ev += count[t];
        }
        *evals = ev;
        return total;
    }

    std::vector<double> axis_edges(std::size_t k, std::size_t N) const {
        const std::size_t a = free_[k];
        const double R = R_[k];
        std::vector<double> e;
        for (std::size_t j = 0; j <= N; ++j) e.push_back(R * static_cast<double>(j) / static_cast<double>(N));
        auto add = [&](double v) {
            if (v > 0.0 && v < R) e.push_back(v);
        };
        for (const auto& o : outs_) {
            if (!o.weight_breaks.empty())
                for (double v : o.weight_breaks[a]) add(v);
            for (const auto& f : o.region.factors) {
                for (std::size_t q = 0; q < f.axes.size(); ++q) {
                    if (f.axes[q] != a) continue;
                    if (f.kind == RegionFactor::Kind::cset || f.kind == RegionFactor::Kind::cset_complement) {
                        for (std::size_t j = 0; j < f.set.size(); ++j) add(f.set.corner(j)[q]);
                    } else if (f.kind == RegionFactor::Kind::interval) {
                        add(f.lo);
                        add(f.hi);
                    }
                }
            }
        }
        std::sort(e.begin(), e.end());
        e.erase(std::unique(e.begin(), e.end()), e.end());
        return e;
    }

    void outer_cell(std::size_t N, const std::vector<std::vector<double>>& edges, const std::vector<std::size_t>& idx,
                    std::vector<double>& x, std::vector<double>& acc, std::size_t& ev) const {
        const std::size_t d = free_.size();
        const std::size_t outer = d - 1;
        std::array<double, 4> lo{}, hi{};
        double s_lo = 0.0, s_hi = 0.0;
        for (std::size_t k = 0; k < outer; ++k) {
            lo[k] = edges[k][idx[k]];
            hi[k] = edges[k][idx[k] + 1];
            s_lo += K_.young(free_[k])(lo[k]);
            s_hi += K_.young(free_[k])(hi[k]);
        }
        if (s_lo > L_) return;
        bool boundary = s_hi > L_;
        if (!boundary) boundary = level_crossing(lo, hi);
        const std::size_t sub = boundary ? 4 : 1;
        std::size_t total = 1;
        for (std::size_t k = 0; k < outer; ++k) total *= sub;
        double vol = 1.0;
        for (std::size_t k = 0; k < outer; ++k) vol *= (hi[k] - lo[k]) / static_cast<double>(sub);
        for (std::size_t s = 0; s < total; ++s) {
            std::size_t rem = s;
            for (std::size_t k = 0; k < outer; ++k) {
                const std::size_t j = rem % sub;
                rem /= sub;
                x[free_[k]] = lo[k] + (hi[k] - lo[k]) * (static_cast<double>(j) + 0.5) / static_cast<double>(sub);
            }
            inner(N, x, vol, acc, ev);
        }
    }

    bool level_crossing(const std::array<double, 4>& lo, const std::array<double, 4>& hi) const {
        const std::size_t outer = free_.size() - 1;
        for (const auto& o : outs_) {
            for (const auto& f : o.region.factors) {
                if (f.kind != RegionFactor::Kind::level) continue;
                double t_lo = 0.0, t_hi = 0.0;
                bool touches = false;
                for (std::size_t a : f.axes) {
                    std::size_t k = 0;
                    while (k < outer && free_[k] != a) ++k;
                    if (k < outer) {
                        touches = true;
                        t_lo += K_.young(a)(lo[k]);
                        t_hi += K_.young(a)(hi[k]);
                    } else if (a != free_.back()) {
                        const double v = K_.young(a)(base_[a]);
                        t_lo += v;
                        t_hi += v;
                    }
                }
                if (touches && (t_lo <= f.level) != (t_hi <= f.level)) return true;
            }
        }
        return false;
    }

    // Integrates every output along the innermost free axis at fixed outer coordinates.
    void inner(std::size_t N, std::vector<double>& x, double vol, std::vector<double>& acc, std::size_t& ev) const {
        const std::size_t ax = free_.back();
        const YoungFunction& fi = K_.young(ax);
        double s = 0.0;
        for (std::size_t k = 0; k + 1 < free_.size(); ++k) s += K_.young(free_[k])(x[free_[k]]);
        const double rem = L_ - s;
        if (rem < 0.0) return;
        const double u = std::min(fi.inverse(rem), R_.back());
        const double h = R_.back() / static_cast<double>(N);
        for (std::size_t k = 0; k < outs_.size(); ++k) {
            const Output& o = outs_[k];
            double a = 0.0, b = u;
            bool none = false;
            for (const auto& f : o.region.factors) {
                if (!clip(f, x, ax, a, b)) {
                    none = true;
                    break;
                }
            }
            if (none || !(b > a)) continue;
            if (!o.weight) {
                acc[k] += vol * (b - a);
                ++ev;
                continue;
            }
            std::vector<double> pts;
            pts.push_back(a);
            const auto j0 = static_cast<std::size_t>(std::floor(a / h)) + 1;
            for (std::size_t j = j0; static_cast<double>(j) * h < b; ++j) pts.push_back(static_cast<double>(j) * h);
            if (!o.weight_breaks.empty())
                for (double v : o.weight_breaks[ax])
                    if (v > a && v < b) pts.push_back(v);
            pts.push_back(b);
            std::sort(pts.begin(), pts.end());
            double sum = 0.0;
            const double keep = x[ax];
            for (std::size_t q = 0; q + 1 < pts.size(); ++q) {
                const double w = pts[q + 1] - pts[q];
                if (!(w > 0.0)) continue;
                x[ax] = 0.5 * (pts[q] + pts[q + 1]);
                sum += w * o.weight(x);
                ++ev;
            }
            x[ax] = keep;
            acc[k] += vol * sum;
        }
    }

    // Narrows [a, b] on axis ax to the factor; false when the factor excludes the whole line.
    bool clip(const RegionFactor& f, std::span<const double> x, std::size_t ax, double& a, double& b) const {
        std::size_t pos = f.axes.size();
        for (std::size_t q = 0; q < f.axes.size(); ++q)
            if (f.axes[q] == ax) pos = q;
        switch (f.kind) {
            case RegionFactor::Kind::cset:
            case RegionFactor::Kind::cset_complement: {
                const bool in = f.kind == RegionFactor::Kind::cset;
                Gathered g = gather(f.axes, x);
                if (pos == f.axes.size()) return f.set.contains(g.span()) == in;
                g.v[pos] = 0.0;
                const auto v = f.set.slice_sup(g.span(), pos);
                if (!v) return !in;
                if (in) b = std::min(b, *v);
                else a = std::max(a, *v);
                return true;
            }
            case RegionFactor::Kind::interval:
                if (pos == f.axes.size()) return x[f.axes[0]] >= f.lo && x[f.axes[0]] <= f.hi;
                a = std::max(a, f.lo);
                b = std::min(b, f.hi);
                return true;
            case RegionFactor::Kind::level: {
                double t = 0.0;
                for (std::size_t q = 0; q < f.axes.size(); ++q)
                    if (q != pos) t += K_.young(f.axes[q])(x[f.axes[q]]);
                if (t > f.level) return false;
                if (pos < f.axes.size()) b = std::min(b, K_.young(ax).inverse(f.level - t));
                return true;
            }
        }
        return false;
    }

    // All coordinates fixed: the domain check already happened in the constructor.
    double point_value(std::size_t k, std::span<const double> x) const {
        if (!outs_[k].region.contains(K_, x)) return 0.0;
        return outs_[k].weight ? outs_[k].weight(x) : 1.0;
    }

    std::vector<double> tensor(std::size_t N, std::size_t* evals) const {
        const std::size_t d = free_.size();
        const std::size_t m = outs_.size();
        std::vector<std::vector<double>> part(N, std::vector<double>(m, 0.0));
        double vol = 1.0;
        for (double r : R_) vol *= r / static_cast<double>(N);
        parallel_for(N, spec_.workers, [&](std::size_t t) {
            std::vector<double> x = base_;
            std::vector<std::size_t> idx(d, 0);
            idx[0] = t;
            for (;;) {
                double s = 0.0;
                for (std::size_t k = 0; k < d; ++k) {
                    x[free_[k]] = R_[k] * (static_cast<double>(idx[k]) + 0.5) / static_cast<double>(N);
                    s += K_.young(free_[k])(x[free_[k]]);
                }
                if (s <= L_)
                    for (std::size_t k = 0; k < m; ++k)
                        if (outs_[k].region.contains(K_, x))
                            part[t][k] += vol * (outs_[k].weight ? outs_[k].weight(x) : 1.0);
                std::size_t k = d;
                bool done = true;
                while (k > 1) {
                    --k;
                    if (++idx[k] < N) {
                        done = false;
                        break;
                    }
                    idx[k] = 0;
                }
                if (done) break;
            }
        });
        std::vector<double> total(m, 0.0);
        for (std::size_t t = 0; t < N; ++t)
            for (std::size_t k = 0; k < m; ++k) total[k] += part[t][k];
        std::size_t cells = 1;
        for (std::size_t k = 0; k < d; ++k) cells *= N;
        *evals = cells;
        return total;
    }

    const OrliczBall& K_;
    const std::vector<Output>& outs_;
    QuadratureSpec spec_;
    std::vector<double> base_;
    std::vector<std::size_t> free_;
    std::vector<double> R_;
    double L_ = 1.0;
    bool empty_ = false;
};

}  // namespace

std::vector<IntegralResult> integrate_outputs(const OrliczBall& K, const Domain& dom, const std::vector<Output>& outputs,
                                              const QuadratureSpec& spec) {
    Integrator e(K, dom, outputs, spec);
    return e.run();
}

IntegralResult integrate_quadrant(const OrliczBall& K, const Weight& weight, const Region& region,
                                  const QuadratureSpec& spec) {
    if (K.dim() > 4) throw std::invalid_argument("integrate_quadrant: n > 4, use the samplers");
    return integrate_outputs(K, Domain{}, {Output{region, weight, {}}}, spec)[0];
}

IntegralResult section_measure(const OrliczBall& K, const std::vector<std::optional<double>>& fixed,
                               const Weight& weight, const QuadratureSpec& spec) {
    if (fixed.size() != K.dim()) throw std::invalid_argument("section_measure: fixed size mismatch");
    const auto free = static_cast<std::size_t>(std::count(fixed.begin(), fixed.end(), std::nullopt));
    if (free > 3) throw std::invalid_argument("section_measure: more than 3 free coordinates");
    return integrate_outputs(K, Domain{fixed, 1.0}, {Output{Region{}, weight, {}}}, spec)[0];
}

IntegralResult integrate_1d(const std::function<double(double)>& fn, double a, double b, const QuadratureSpec& spec,
                            const std::vector<double>& breaks) {
    if (!(b >= a)) throw std::invalid_argument("integrate_1d: need a <= b");
    if (spec.nodes < 8 || spec.levels < 2) throw std::invalid_argument("integrate_1d: bad quadrature spec");
    IntegralResult r;
    for (std::size_t lv = 0; lv < spec.levels; ++lv) {
        const std::size_t N = spec.nodes >> lv;
        std::vector<double> pts;
        for (std::size_t j = 0; j <= N; ++j) pts.push_back(a + (b - a) * static_cast<double>(j) / static_cast<double>(N));
        for (double v : breaks)
            if (v > a && v < b) pts.push_back(v);
        std::sort(pts.begin(), pts.end());
        double s = 0.0;
        for (std::size_t q = 0; q + 1 < pts.size(); ++q) {
            const double w = pts[q + 1] - pts[q];
            if (w > 0.0) s += w * fn(0.5 * (pts[q] + pts[q + 1]));
        }
        r.by_level.push_back(s);
        if (lv == 0) r.nodes_used = pts.size() - 1;
    }
    r.value = r.by_level[0];
    r.error = level_error(r.by_level);
    return r;
}

bool fraction_equivalence(double a, double b, double c, double d, double tol) {
    // Sign of u - v with slack: +1, 0 (undecided) or -1.
    auto sign = [tol](double u, double v) { return u > v + tol ? 1 : (u < v - tol ? -1 : 0); };
    const double mid = (a + b) / (c + d);
    const int s[3] = {sign(a / c, b / d), sign(a / c, mid), sign(mid, b / d)};
    bool pos = false, neg = false;
    for (int v : s) {
        pos = pos || v > 0;
        neg = neg || v < 0;
    }
    return !(pos && neg);
}

RatioReport ratio_compare(const std::function<double(double)>& f, const std::function<double(double)>& g,
                          const std::function<double(double)>& mu, double a, double b, double c, double d,
                          const QuadratureSpec& spec) {
    if (!(a < b && b <= d && a <= c && c < d)) throw std::invalid_argument("ratio_compare: need a < b <= d, a <= c < d");
    auto fm = [&](double t) { return f(t) * mu(t); };
    auto gm = [&](double t) { return g(t) * mu(t); };
    const auto F1 = integrate_1d(fm, a, b, spec), G1 = integrate_1d(gm, a, b, spec);
    const auto F2 = integrate_1d(fm, c, d, spec), G2 = integrate_1d(gm, c, d, spec);
    RatioReport r;
    const double floor = 1e-12;
    r.lhs_defined = G1.value > floor + 3.0 * G1.error;
    r.rhs_defined = G2.value > floor + 3.0 * G2.error;
    if (r.lhs_defined) r.lhs = F1.value / G1.value;
    if (r.rhs_defined) r.rhs = F2.value / G2.value;
    if (!r.lhs_defined || !r.rhs_defined) {
        r.verdict = Verdict::vacuous;
        return r;
    }
    // First-order propagation of the integral errors into each ratio.
    const double e1 = (F1.error + std::fabs(r.lhs) * G1.error) / G1.value;
    const double e2 = (F2.error + std::fabs(r.rhs) * G2.error) / G2.value;
    r.tol = verdict_tol({e1, e2});
    r.verdict = r.lhs >= r.rhs - r.tol ? Verdict::pass : Verdict::fail;
    if (F1.value >= 0.0 && F2.value >= 0.0) r.fact_consistent = fraction_equivalence(F1.value, F2.value, G1.value, G2.value, r.tol);
    return r;
}

PairingReport pairing_check(const std::function<double(double)>& p, const std::function<double(double)>& q,
                            const std::function<double(double)>& f, const std::function<double(double)>& g,
                            const std::function<double(double)>& mu, double lo, double hi, const QuadratureSpec& spec) {
    auto I = [&](const std::function<double(double)>& u, const std::function<double(double)>& v) {
        return integrate_1d([&](double t) { return u(t) * v(t) * mu(t); }, lo, hi, spec);
    };
    const auto pf = I(p, f), qg = I(q, g), pg = I(p, g), qf = I(q, f);
    PairingReport r;
    r.lhs = pf.value * qg.value;
    r.rhs = pg.value * qf.value;
    r.tol = verdict_tol({std::fabs(pf.value) * qg.error + std::fabs(qg.value) * pf.error,
                         std::fabs(pg.value) * qf.error + std::fabs(qf.value) * pg.error});
    r.verdict = r.lhs <= r.rhs + r.tol ? Verdict::pass : Verdict::fail;
    return r;
}

}  // namespace orlicz
