#include "orlicz/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <random>
#include <stdexcept>

#include "orlicz/parallel.hpp"

namespace orlicz {

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double ipow(double x, unsigned e) {
    double r = 1.0;
    for (unsigned k = 0; k < e; ++k) r *= x;
    return r;
}

bool near_zero(double mass, double err) { return mass <= 3.0 * err + 1e-14; }

// Reruns a quadrature check with doubled nodes while it fails, at most twice.
template <class Report, class Check>
Report escalate(Check&& check, QuadratureSpec spec) {
    Report r = check(spec);
    for (std::size_t k = 1; k <= 2 && r.verdict == Verdict::fail; ++k) {
        spec.nodes *= 2;
        r = check(spec);
        r.escalations = k;
    }
    return r;
}

bool unit_factor(const ConcavePower& f) { return f.lines.empty() && f.lo == 0.0 && f.hi == kInf; }

// Weighted output over ambient axes; fixed density coordinates are dropped.
Output density_output(Region region, const ProperMeasure& mu, std::size_t n, std::size_t ax0, bool use0,
                      std::size_t ax1, bool use1) {
    Output o;
    o.region = std::move(region);
    use0 = use0 && !unit_factor(mu.fx);
    use1 = use1 && !unit_factor(mu.fy);
    if (!use0 && !use1) return o;
    const ConcavePower fx = mu.fx, fy = mu.fy;
    o.weight = [fx, fy, ax0, ax1, use0, use1](std::span<const double> x) {
        double w = 1.0;
        if (use0) w *= fx(x[ax0]);
        if (use1) w *= fy(x[ax1]);
        return w;
    };
    o.weight_breaks.assign(n, {});
    if (use0) o.weight_breaks[ax0] = fx.breaks();
    if (use1) o.weight_breaks[ax1] = fy.breaks();
    return o;
}

// Delete-one (or delete-block) jackknife of the plug-in covariance.
CovarianceReport jackknife_cov(std::vector<double> a, std::vector<double> b, bool blocked) {
    CovarianceReport rep;
    const std::size_t N = a.size();
    if (N < 2) throw std::invalid_argument("covariance test: need at least 2 rows");
    auto center = [](std::vector<double>& v) {
        double m = 0.0;
        for (double x : v) m += x;
        m /= static_cast<double>(v.size());
        const double first = v[0];
        bool constant = true;
        for (double& x : v) {
            if (x != first) constant = false;
            x -= m;
        }
        return constant;
    };
    const bool ca = center(a);
    const bool cb = center(b);
    if (ca || cb) return rep;

    const std::size_t G = blocked ? std::min<std::size_t>(50, N) : N;
    std::vector<double> sa(G, 0.0), sb(G, 0.0), sab(G, 0.0);
    std::vector<std::size_t> cnt(G, 0);
    double Sa = 0.0, Sb = 0.0, Sab = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
        const std::size_t g = blocked ? i * G / N : i;
        sa[g] += a[i];
        sb[g] += b[i];
        sab[g] += a[i] * b[i];
        ++cnt[g];
        Sa += a[i];
        Sb += b[i];
        Sab += a[i] * b[i];
    }
    const double Nd = static_cast<double>(N);
    rep.estimate = Sab / Nd - (Sa / Nd) * (Sb / Nd);
    std::vector<double> loo(G);
    double mean = 0.0;
    for (std::size_t g = 0; g < G; ++g) {
        const double m = Nd - static_cast<double>(cnt[g]);
        loo[g] = (Sab - sab[g]) / m - ((Sa - sa[g]) / m) * ((Sb - sb[g]) / m);
        mean += loo[g];
    }
    mean /= static_cast<double>(G);
    double ss = 0.0;
    for (double v : loo) ss += (v - mean) * (v - mean);
    rep.se = std::sqrt(static_cast<double>(G - 1) / static_cast<double>(G) * ss);
    rep.tol = 4.0 * rep.se + 1e-12;
    rep.verdict = rep.estimate <= rep.tol ? Verdict::pass : Verdict::fail;
    return rep;
}

std::vector<double> gather(const SampleBatch& batch, std::size_t i, const std::vector<std::size_t>& axes, bool absolute) {
    std::vector<double> v(axes.size());
    for (std::size_t k = 0; k < axes.size(); ++k) {
        const double x = batch.at(i, axes[k]);
        v[k] = absolute ? std::fabs(x) : x;
    }
    return v;
}

void check_disjoint(const std::vector<std::size_t>& I, const std::vector<std::size_t>& J, std::size_t n) {
    for (std::size_t a : I) {
        if (a >= n) throw std::invalid_argument("index block out of range");
        if (std::find(J.begin(), J.end(), a) != J.end()) throw std::invalid_argument("index blocks must be disjoint");
    }
    for (std::size_t b : J)
        if (b >= n) throw std::invalid_argument("index block out of range");
}

}  // namespace

Verdict judge(double margin, double tol) { return margin >= -tol ? Verdict::pass : Verdict::fail; }

// ---------------------------------------------------------------------------

FourTermReport four_term_check(const OrliczBall& K, const CSet& A, const std::vector<std::size_t>& I, const CSet& B,
                               const std::vector<std::size_t>& J, const QuadratureSpec& spec) {
    check_disjoint(I, J, K.dim());
    if (K.dim() > 4) throw std::invalid_argument("four_term_check: n > 4, use four_term_sampled");
    auto once = [&](const QuadratureSpec& s) {
        std::vector<Output> outs(4);
        outs[0].region.factors = {RegionFactor::in(A, I), RegionFactor::in(B, J)};
        outs[1].region.factors = {RegionFactor::in(A, I), RegionFactor::out(B, J)};
        outs[2].region.factors = {RegionFactor::out(A, I), RegionFactor::in(B, J)};
        outs[3].region.factors = {RegionFactor::out(A, I), RegionFactor::out(B, J)};
        const auto res = integrate_outputs(K, {}, outs, s);
        FourTermReport r;
        for (int k = 0; k < 4; ++k) {
            r.masses[k] = res[k].value;
            r.errors[k] = res[k].error;
        }
        const double* m = r.masses;
        const double* e = r.errors;
        r.margin = m[1] * m[2] - m[0] * m[3];
        r.tol = verdict_tol({m[2] * e[1] + m[1] * e[2] + m[3] * e[0] + m[0] * e[3]});
        const bool degenerate = near_zero(m[0] + m[1], e[0] + e[1]) || near_zero(m[2] + m[3], e[2] + e[3]) ||
                                near_zero(m[0] + m[2], e[0] + e[2]) || near_zero(m[1] + m[3], e[1] + e[3]);
        r.verdict = degenerate ? Verdict::vacuous : judge(r.margin, r.tol);
        return r;
    };
    return escalate<FourTermReport>(once, spec);
}

FourTermReport four_term_sampled(const SampleBatch& batch, const CSet& A, const std::vector<std::size_t>& I,
                                 const CSet& B, const std::vector<std::size_t>& J) {
    check_disjoint(I, J, batch.dim);
    const std::size_t N = batch.rows();
    std::vector<double> a(N), b(N);
    std::size_t count[4] = {0, 0, 0, 0};
    for (std::size_t i = 0; i < N; ++i) {
        const bool inA = A.contains(gather(batch, i, I, true));
        const bool inB = B.contains(gather(batch, i, J, true));
        a[i] = inA ? 1.0 : 0.0;
        b[i] = inB ? 1.0 : 0.0;
        ++count[(inA ? 0 : 2) + (inB ? 0 : 1)];
    }
    FourTermReport r;
    for (int k = 0; k < 4; ++k) r.masses[k] = static_cast<double>(count[k]) / static_cast<double>(N);
    const auto cov = jackknife_cov(std::move(a), std::move(b), batch.is_mcmc());
    r.margin = -cov.estimate;
    r.tol = cov.tol;
    r.verdict = cov.verdict == Verdict::vacuous ? Verdict::vacuous : judge(r.margin, r.tol);
    return r;
}

CovarianceReport na_covariance_test(const SampleBatch& batch, const std::vector<std::size_t>& I, const ScalarFn& f,
                                    const std::vector<std::size_t>& J, const ScalarFn& g, bool absolute) {
    check_disjoint(I, J, batch.dim);
    const std::size_t N = batch.rows();
    std::vector<double> a(N), b(N);
    for (std::size_t i = 0; i < N; ++i) {
        a[i] = f(gather(batch, i, I, absolute));
        b[i] = g(gather(batch, i, J, absolute));
    }
    return jackknife_cov(std::move(a), std::move(b), batch.is_mcmc());
}

CovarianceReport na_covariance_test(const SampleBatch& batch, const std::vector<std::size_t>& I, const MonotoneFn& f,
                                    const std::vector<std::size_t>& J, const MonotoneFn& g, bool absolute) {
    if (f.dim() != I.size() || g.dim() != J.size()) throw std::invalid_argument("na_covariance_test: arity mismatch");
    return na_covariance_test(batch, I, ScalarFn([&f](std::span<const double> x) { return f(x); }), J,
                              ScalarFn([&g](std::span<const double> x) { return g(x); }), absolute);
}

CovarianceReport lp_radius_na_test(const SampleBatch& batch, const std::vector<std::size_t>& I, const RadiusFn& f,
                                   const std::vector<std::size_t>& J, const RadiusFn& g) {
    if (f.dim() != I.size() || g.dim() != J.size()) throw std::invalid_argument("lp_radius_na_test: arity mismatch");
    return na_covariance_test(batch, I, ScalarFn([&f](std::span<const double> x) { return f(x); }), J,
                              ScalarFn([&g](std::span<const double> x) { return g(x); }), true);
}

// ---------------------------------------------------------------------------

double ConcavePower::operator()(double t) const {
    if (t < lo || t > hi) return 0.0;
    double base = 1.0;
    if (!lines.empty()) {
        base = kInf;
        for (const auto& [a, b] : lines) base = std::min(base, a + b * t);
        base = std::max(base, 0.0);
    }
    return ipow(base, m);
}

std::vector<double> ConcavePower::breaks() const {
    std::vector<double> out;
    auto add = [&](double v) {
        if (std::isfinite(v) && v >= lo && v <= hi) out.push_back(v);
    };
    add(lo);
    add(hi);
    for (std::size_t k = 0; k < lines.size(); ++k) {
        if (lines[k].second != 0.0) add(-lines[k].first / lines[k].second);
        for (std::size_t q = k + 1; q < lines.size(); ++q) {
            const double db = lines[k].second - lines[q].second;
            if (db != 0.0) add((lines[q].first - lines[k].first) / db);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::string ConcavePower::describe() const {
    std::string s = "cp{m=" + std::to_string(m) + ";[" + num(lo) + "," + num(hi) + "];";
    for (const auto& [a, b] : lines) s += num(a) + "+" + num(b) + "t;";
    return s + "}";
}

bool root_concave_on_grid(const ConcavePower& f, std::size_t grid) {
    if (f.m == 0 || grid < 3) return false;
    const double hi = std::isfinite(f.hi) ? f.hi : f.lo + 10.0;
    std::vector<double> t(grid), r(grid);
    for (std::size_t i = 0; i < grid; ++i) {
        t[i] = f.lo + (hi - f.lo) * static_cast<double>(i) / static_cast<double>(grid - 1);
        r[i] = std::pow(f(t[i]), 1.0 / f.m);
    }
    for (std::size_t i = 0; i < grid; ++i)
        for (std::size_t k = i + 2; k < grid; k += 2) {
            if (r[i] <= 0.0 || r[k] <= 0.0) continue;
            const std::size_t j = (i + k) / 2;
            if (r[j] < 0.5 * (r[i] + r[k]) - 1e-12) return false;
        }
    return true;
}

ProperMeasure ProperMeasure::lebesgue() { return ProperMeasure{}; }

double ProperMeasure::density(std::span<const double> x) const {
    double w = fx(x[0]);
    if (x.size() > 1) w *= fy(x[1]);
    return w;
}

bool ProperMeasure::proper_for(std::span<const double> radii) const {
    auto ok = [](const ConcavePower& f, double R) { return f.lo >= 0.0 && f.hi <= R && root_concave_on_grid(f); };
    if (radii.empty() || !ok(fx, radii[0])) return false;
    return radii.size() < 2 || ok(fy, radii[1]);
}

std::string ProperMeasure::describe() const { return "mu{" + fx.describe() + "x" + fy.describe() + "}"; }

// ---------------------------------------------------------------------------

ThetaInstance ThetaInstance::phi_pair(OrliczBall K, std::size_t z_axis, double z1, double z2) {
    const std::size_t n = K.dim();
    if (n < 2) throw std::invalid_argument("phi_pair: need at least 2 dimensions");
    if (z_axis >= n) throw std::invalid_argument("phi_pair: z axis out of range");
    if (!(z1 >= 0.0) || !(z2 >= z1)) throw std::invalid_argument("phi_pair: need 0 <= z1 <= z2");
    if (!(K.young(z_axis)(z1) <= 1.0)) throw std::invalid_argument("phi_pair: empty section at z1");
    ThetaInstance t(Kind::phi, std::move(K));
    t.z_axis_ = z_axis;
    t.z1_ = z1;
    t.z2_ = z2;
    for (std::size_t i = 0; i < n; ++i)
        if (i != z_axis) t.x_axes_.push_back(i);
    return t;
}

ThetaInstance ThetaInstance::psi_pair(OrliczBall K, std::vector<std::size_t> z_axes, CSet B) {
    const std::size_t n = K.dim();
    if (z_axes.empty() || z_axes.size() >= n) throw std::invalid_argument("psi_pair: need 1 <= |z| < n");
    if (B.dim() != z_axes.size()) throw std::invalid_argument("psi_pair: set dimension mismatch");
    for (std::size_t k = 0; k < z_axes.size(); ++k) {
        if (z_axes[k] >= n) throw std::invalid_argument("psi_pair: z axis out of range");
        for (std::size_t q = 0; q < k; ++q)
            if (z_axes[q] == z_axes[k]) throw std::invalid_argument("psi_pair: repeated z axis");
    }
    ThetaInstance t(Kind::psi, std::move(K));
    t.z_axes_ = std::move(z_axes);
    t.B_ = std::move(B);
    for (std::size_t i = 0; i < n; ++i)
        if (std::find(t.z_axes_.begin(), t.z_axes_.end(), i) == t.z_axes_.end()) t.x_axes_.push_back(i);
    return t;
}

std::vector<double> ThetaInstance::domain_radii() const {
    std::vector<double> r;
    const double level = kind_ == Kind::phi ? 1.0 - K_.young(z_axis_)(z1_) : 1.0;
    for (std::size_t a : x_axes_) r.push_back(K_.young(a).inverse(std::max(level, 0.0)));
    return r;
}

Domain ThetaInstance::domain(const std::vector<std::optional<double>>& fixed) const {
    if (!fixed.empty() && fixed.size() != dim()) throw std::invalid_argument("theta: fixed size mismatch");
    Domain d;
    d.fixed.assign(K_.dim(), std::nullopt);
    if (kind_ == Kind::phi) d.fixed[z_axis_] = z1_;
    for (std::size_t k = 0; k < fixed.size(); ++k) d.fixed[x_axes_[k]] = fixed[k];
    return d;
}

Region ThetaInstance::to_ambient(const Region& r) const {
    Region out = r;
    for (auto& f : out.factors)
        for (auto& a : f.axes) {
            if (a >= dim()) throw std::invalid_argument("theta: region axis out of range");
            a = x_axes_[a];
        }
    return out;
}

std::pair<Output, Output> ThetaInstance::outputs(const Region& region, const ProperMeasure& mu,
                                                 const std::vector<std::optional<double>>& fixed) const {
    const Region amb = to_ambient(region);
    const bool use0 = fixed.empty() || !fixed[0];
    const bool use1 = dim() > 1 && (fixed.empty() || !fixed[1]);
    const std::size_t ax1 = dim() > 1 ? x_axes_[1] : x_axes_[0];
    Output o1 = density_output(amb, mu, K_.dim(), x_axes_[0], use0, ax1, use1);
    Output o2 = o1;
    if (kind_ == Kind::phi) o2.region.factors.push_back(RegionFactor::sublevel(x_axes_, 1.0 - K_.young(z_axis_)(z2_)));
    else o2.region.factors.push_back(RegionFactor::out(B_, z_axes_));
    return {std::move(o1), std::move(o2)};
}

ThetaInstance::EtaPair ThetaInstance::eta(std::span<const double> x, const QuadratureSpec& spec) const {
    if (x.size() != dim()) throw std::invalid_argument("eta: dimension mismatch");
    for (double v : x)
        if (v < 0.0) throw std::invalid_argument("eta: point outside the quadrant");
    EtaPair e;
    if (kind_ == Kind::phi) {
        std::vector<double> y(K_.dim());
        for (std::size_t k = 0; k < dim(); ++k) y[x_axes_[k]] = x[k];
        y[z_axis_] = z1_;
        e.eta1 = K_.contains(y) ? 1.0 : 0.0;
        y[z_axis_] = z2_;
        e.eta2 = K_.contains(y) ? 1.0 : 0.0;
        return e;
    }
    std::vector<std::optional<double>> fixed(x.begin(), x.end());
    auto [o1, o2] = outputs(Region{}, ProperMeasure::lebesgue(), fixed);
    const auto res = integrate_outputs(K_, domain(fixed), {o1, o2}, spec);
    e.eta1 = res[0].value;
    e.eta2 = res[1].value;
    e.error = std::max(res[0].error, res[1].error);
    return e;
}

std::optional<ThetaInstance> ThetaInstance::derive(const RestrictionSpec& r) const {
    RestrictionSpec amb = r;
    if (r.axis >= dim()) throw std::invalid_argument("derive: axis out of range");
    amb.axis = x_axes_[r.axis];
    const bool hyper = r.kind == RestrictionSpec::Kind::hyperplane;
    if (hyper) {
        if (r.other_axis >= dim()) throw std::invalid_argument("derive: axis out of range");
        amb.other_axis = x_axes_[r.other_axis];
    }
    const Restriction res = hyper ? restrict_hyperplane(K_, amb) : restrict_interval(K_, amb.axis, r.xa, r.xb);
    const auto* ball = std::get_if<OrliczBall>(&res.body);
    if (!ball) return std::nullopt;
    // Ambient index after dropping the eliminated axis.
    auto shift = [&](std::size_t a) {
        if (!hyper) return a;
        return a > res.normalized.axis ? a - 1 : a;
    };
    try {
        if (kind_ == Kind::phi) {
            if (!(ball->young(shift(z_axis_))(z1_) <= 1.0)) return std::nullopt;
            return phi_pair(*ball, shift(z_axis_), z1_, z2_);
        }
        std::vector<std::size_t> z;
        for (std::size_t a : z_axes_) z.push_back(shift(a));
        return psi_pair(*ball, std::move(z), B_);
    } catch (const std::invalid_argument&) {
        return std::nullopt;
    }
}

std::string ThetaInstance::describe() const {
    std::string s = kind_ == Kind::phi ? "phi{" : "psi{";
    s += K_.describe();
    if (kind_ == Kind::phi) {
        s += ";z=" + std::to_string(z_axis_) + ";" + num(z1_) + "," + num(z2_);
    } else {
        s += ";z=";
        for (std::size_t a : z_axes_) s += std::to_string(a) + ".";
        s += ";" + B_.describe();
    }
    return s + "}";
}

ThetaValue make_ratio(const IntegralResult& num, const IntegralResult& den) {
    ThetaValue t;
    t.num = num;
    t.den = den;
    t.defined = den.value > 1e-12 + 3.0 * den.error;
    if (t.defined) {
        t.value = num.value / den.value;
        t.error = (num.error + std::fabs(t.value) * den.error) / den.value;
    }
    return t;
}

ThetaValue theta_ratio(const ThetaInstance& inst, const ProperMeasure& mu, const Region& region,
                       const QuadratureSpec& spec, const std::vector<std::optional<double>>& fixed) {
    auto [o1, o2] = inst.outputs(region, mu, fixed);
    const auto res = integrate_outputs(inst.ball(), inst.domain(fixed), {o1, o2}, spec);
    return make_ratio(res[1], res[0]);
}

namespace {

// Compares consecutive defined values of a sequence that should not increase.
void scan_nonincreasing(std::size_t axis, const std::vector<double>& t, const std::vector<ThetaValue>& v,
                        MonotonicityReport& rep, double& worst) {
    std::optional<std::size_t> prev;
    for (std::size_t i = 0; i < v.size(); ++i) {
        ++rep.points;
        if (!v[i].defined) {
            ++rep.undefined;
            continue;
        }
        if (prev) {
            const double d = v[*prev].value - v[i].value;
            const double tol = verdict_tol({v[*prev].error, v[i].error});
            ++rep.comparisons;
            if (d < -tol) rep.violations.push_back({axis, t[*prev], t[i], v[*prev].value, v[i].value, tol});
            if (d + tol < worst) {
                worst = d + tol;
                rep.margin = d;
                rep.tol = tol;
            }
        }
        prev = i;
    }
}

void finish(MonotonicityReport& rep) {
    if (rep.comparisons == 0) rep.verdict = Verdict::vacuous;
    else rep.verdict = rep.violations.empty() ? Verdict::pass : Verdict::fail;
}

}  // namespace

MonotonicityReport theta_monotonicity_check(const ThetaInstance& inst, const ProperMeasure& mu,
                                            const std::vector<std::size_t>& integrated, std::size_t grid,
                                            std::uint64_t seed, const QuadratureSpec& spec) {
    const std::size_t m = inst.dim();
    std::vector<bool> is_int(m, false);
    for (std::size_t a : integrated) {
        if (a >= m) throw std::invalid_argument("theta_monotonicity_check: axis out of range");
        is_int[a] = true;
    }
    std::vector<std::size_t> lines;
    for (std::size_t a = 0; a < m; ++a)
        if (!is_int[a]) lines.push_back(a);
    if (lines.empty()) throw std::invalid_argument("theta_monotonicity_check: nothing left to vary");
    if (grid < 2) throw std::invalid_argument("theta_monotonicity_check: grid too small");

    const auto R = inst.domain_radii();
    Engine rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<std::optional<double>> base(m);
    for (std::size_t a : lines) base[a] = R[a] * u(rng);

    MonotonicityReport rep;
    double worst = kInf;
    for (std::size_t a : lines) {
        std::vector<double> t(grid);
        std::vector<ThetaValue> v(grid);
        for (std::size_t i = 0; i < grid; ++i) {
            t[i] = R[a] * (static_cast<double>(i) + 0.5) / static_cast<double>(grid);
            auto fixed = base;
            fixed[a] = t[i];
            v[i] = theta_ratio(inst, mu, Region{}, spec, fixed);
        }
        scan_nonincreasing(a, t, v, rep, worst);
    }
    finish(rep);
    return rep;
}

MonotonicityReport slab_ratio_check(const OrliczBall& K, std::size_t z_axis, const CSet& A, const ProperMeasure& mu,
                                    std::size_t grid, const QuadratureSpec& spec) {
    const std::size_t n = K.dim();
    if (z_axis >= n || n < 2) throw std::invalid_argument("slab_ratio_check: bad z axis");
    if (A.dim() != n - 1) throw std::invalid_argument("slab_ratio_check: set dimension mismatch");
    std::vector<std::size_t> xs;
    for (std::size_t i = 0; i < n; ++i)
        if (i != z_axis) xs.push_back(i);
    Region out;
    out.factors.push_back(RegionFactor::out(A, xs));
    const std::size_t ax1 = xs.size() > 1 ? xs[1] : xs[0];
    const Output full = density_output(Region{}, mu, n, xs[0], true, ax1, xs.size() > 1);
    const Output comp = density_output(out, mu, n, xs[0], true, ax1, xs.size() > 1);

    MonotonicityReport rep;
    double worst = kInf;
    std::vector<double> t(grid);
    std::vector<ThetaValue> v(grid);
    for (std::size_t i = 0; i < grid; ++i) {
        t[i] = K.radius(z_axis) * (static_cast<double>(i) + 0.5) / static_cast<double>(grid);
        Domain d;
        d.fixed.assign(n, std::nullopt);
        d.fixed[z_axis] = t[i];
        const auto res = integrate_outputs(K, d, {full, comp}, spec);
        v[i] = make_ratio(res[1], res[0]);
    }
    scan_nonincreasing(z_axis, t, v, rep, worst);
    finish(rep);
    return rep;
}

Margin interval_shift_check(const ThetaInstance& inst, const ProperMeasure& mu, double y0, double xa, double xb,
                            double xc, double xd, const QuadratureSpec& spec) {
    if (inst.dim() < 2) throw std::invalid_argument("interval_shift_check: need a domain of dimension >= 2");
    if (!(xa <= xc && xb <= xd && xa <= xb && xc <= xd)) throw std::invalid_argument("interval_shift_check: bad intervals");
    std::vector<std::optional<double>> fixed(inst.dim());
    fixed[1] = y0;
    auto once = [&](const QuadratureSpec& s) {
        Region r1, r2;
        r1.factors.push_back(RegionFactor::interval(0, xa, xb));
        r2.factors.push_back(RegionFactor::interval(0, xc, xd));
        const auto t1 = theta_ratio(inst, mu, r1, s, fixed);
        const auto t2 = theta_ratio(inst, mu, r2, s, fixed);
        Margin m;
        if (!t1.defined || !t2.defined) return m;
        m.margin = t1.value - t2.value;
        m.tol = verdict_tol({t1.error, t2.error});
        m.verdict = judge(m.margin, m.tol);
        return m;
    };
    return escalate<Margin>(once, spec);
}

MonotonicityReport interval_raise_check(const ThetaInstance& inst, const ProperMeasure& mu, double xa, double xb,
                                        std::size_t grid, const QuadratureSpec& spec) {
    if (inst.dim() < 2) throw std::invalid_argument("interval_raise_check: need a domain of dimension >= 2");
    const double Ry = inst.domain_radii()[1];
    Region r;
    r.factors.push_back(RegionFactor::interval(0, xa, xb));
    MonotonicityReport rep;
    double worst = kInf;
    std::vector<double> t(grid);
    std::vector<ThetaValue> v(grid);
    for (std::size_t i = 0; i < grid; ++i) {
        t[i] = Ry * (static_cast<double>(i) + 0.5) / static_cast<double>(grid);
        std::vector<std::optional<double>> fixed(inst.dim());
        fixed[1] = t[i];
        v[i] = theta_ratio(inst, mu, r, spec, fixed);
    }
    scan_nonincreasing(1, t, v, rep, worst);
    finish(rep);
    return rep;
}

MainReport theorem_main_check(const ThetaInstance& inst, const ProperMeasure& mu, const CSet& A,
                              const QuadratureSpec& spec) {
    if (A.dim() != inst.dim()) throw std::invalid_argument("theorem_main_check: set dimension mismatch");
    std::vector<std::size_t> axes(inst.dim());
    for (std::size_t k = 0; k < axes.size(); ++k) axes[k] = k;

    auto once = [&](const QuadratureSpec& s) {
        Region in, out;
        in.factors.push_back(RegionFactor::in(A, axes));
        out.factors.push_back(RegionFactor::out(A, axes));
        auto [i1, i2] = inst.outputs(in, mu, {});
        auto [c1, c2] = inst.outputs(out, mu, {});
        const auto res = integrate_outputs(inst.ball(), inst.domain({}), {i1, i2, c1, c2}, s);
        auto sum = [](const IntegralResult& a, const IntegralResult& b) {
            IntegralResult r;
            r.value = a.value + b.value;
            r.error = a.error + b.error;
            return r;
        };
        MainReport rep;
        rep.theta_A = make_ratio(res[1], res[0]);
        rep.theta_Ac = make_ratio(res[3], res[2]);
        rep.theta_K = make_ratio(sum(res[1], res[3]), sum(res[0], res[2]));
        auto side = [](const ThetaValue& hi, const ThetaValue& lo) {
            Margin m;
            if (!hi.defined || !lo.defined) return m;
            m.margin = hi.value - lo.value;
            m.tol = verdict_tol({hi.error, lo.error});
            m.verdict = judge(m.margin, m.tol);
            return m;
        };
        rep.upper = side(rep.theta_A, rep.theta_K);
        rep.lower = side(rep.theta_K, rep.theta_Ac);
        if (rep.upper.verdict == Verdict::fail || rep.lower.verdict == Verdict::fail) rep.verdict = Verdict::fail;
        else if (rep.upper.verdict == Verdict::pass || rep.lower.verdict == Verdict::pass) rep.verdict = Verdict::pass;
        return rep;
    };
    QuadratureSpec s = spec;
    MainReport rep = once(s);
    for (std::size_t k = 1; k <= 2 && rep.verdict == Verdict::fail; ++k) {
        s.nodes *= 2;
        rep = once(s);
        rep.upper.escalations = rep.lower.escalations = k;
    }
    return rep;
}

// ---------------------------------------------------------------------------

double LogConcaveWeight::operator()(std::span<const double> z) const {
    double e = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) {
        if (i < a.size()) e += a[i] * z[i];
        if (i < b.size()) {
            const double d = z[i] - (i < c.size() ? c[i] : 0.0);
            e += b[i] * d * d;
        }
    }
    return std::exp(-e);
}

std::string LogConcaveWeight::describe() const {
    std::string s = "lcw{";
    for (std::size_t i = 0; i < a.size(); ++i)
        s += num(a[i]) + "," + num(i < b.size() ? b[i] : 0.0) + "," + num(i < c.size() ? c[i] : 0.0) + ";";
    return s + "}";
}

FourPointReport bm_four_point_check(const OrliczBall& K, std::size_t x_axis, std::size_t y_axis, double x1, double x2,
                                    double y1, double y2, const LogConcaveWeight& nu, const QuadratureSpec& spec) {
    const std::size_t n = K.dim();
    if (n < 3 || n > 5) throw std::invalid_argument("bm_four_point_check: need 3 <= n <= 5");
    if (x_axis >= n || y_axis >= n || x_axis == y_axis) throw std::invalid_argument("bm_four_point_check: bad axes");
    if (!(0.0 <= x1 && x1 <= x2 && 0.0 <= y1 && y1 <= y2))
        throw std::invalid_argument("bm_four_point_check: need 0 <= x1 <= x2 and 0 <= y1 <= y2");
    for (double b : nu.b)
        if (!(b >= 0.0)) throw std::invalid_argument("bm_four_point_check: weight must be log-concave");
    std::vector<std::size_t> rest;
    for (std::size_t i = 0; i < n; ++i)
        if (i != x_axis && i != y_axis) rest.push_back(i);
    Output o;
    o.weight = [nu, rest](std::span<const double> x) {
        double z[5];
        for (std::size_t k = 0; k < rest.size(); ++k) z[k] = x[rest[k]];
        return nu(std::span<const double>(z, rest.size()));
    };

    auto once = [&](const QuadratureSpec& s) {
        FourPointReport r;
        double err[4];
        const double xs[4] = {x1, x1, x2, x2};
        const double ys[4] = {y1, y2, y1, y2};
        for (int k = 0; k < 4; ++k) {
            Domain d;
            d.fixed.assign(n, std::nullopt);
            d.fixed[x_axis] = xs[k];
            d.fixed[y_axis] = ys[k];
            const auto res = integrate_outputs(K, d, {o}, s);
            r.sections[k] = res[0].value;
            err[k] = res[0].error;
        }
        const double* v = r.sections;
        r.margin = v[1] * v[2] - v[0] * v[3];
        r.tol = verdict_tol({v[2] * err[1] + v[1] * err[2] + v[3] * err[0] + v[0] * err[3]});
        const bool empty = v[0] == 0.0 && v[1] == 0.0 && v[2] == 0.0 && v[3] == 0.0;
        r.verdict = empty ? Verdict::vacuous : judge(r.margin, r.tol);
        return r;
    };
    return escalate<FourPointReport>(once, spec);
}

// ---------------------------------------------------------------------------

namespace {

struct DirectionRule {
    std::vector<double> t1, t2;  // directions on the quarter arc (t2 unused for d = 1)
    std::vector<double> w;
};

// Cone measure on the quarter of the unit l_p sphere of R^d. For d = 2,
// theta_1^p is Beta(1/p, 1/p); each half of the arc is parametrized by
// w = theta_min so that the weight p (1 - w^p)^{1/p - 1} stays bounded.
DirectionRule direction_rule(double p, std::size_t d, std::size_t nodes) {
    DirectionRule r;
    if (d == 1) {
        r.t1 = {1.0};
        r.t2 = {0.0};
        r.w = {1.0};
        return r;
    }
    if (d != 2) throw std::invalid_argument("cone measure: block dimension must be 1 or 2");
    const double W = std::pow(0.5, 1.0 / p);
    double total = 0.0;
    for (std::size_t j = 0; j < nodes; ++j) {
        const double w = W * (static_cast<double>(j) + 0.5) / static_cast<double>(nodes);
        const double other = std::pow(1.0 - std::pow(w, p), 1.0 / p);
        const double wt = p * std::pow(1.0 - std::pow(w, p), 1.0 / p - 1.0);
        r.t1.push_back(w);
        r.t2.push_back(other);
        r.w.push_back(wt);
        r.t1.push_back(other);
        r.t2.push_back(w);
        r.w.push_back(wt);
        total += 2.0 * wt;
    }
    for (double& v : r.w) v /= total;
    return r;
}

double fraction(const DirectionRule& rule, std::size_t d, double r,
                const std::function<bool(std::span<const double>)>& in_set, bool complement) {
    double s = 0.0;
    double x[2];
    for (std::size_t j = 0; j < rule.w.size(); ++j) {
        x[0] = r * rule.t1[j];
        x[1] = r * rule.t2[j];
        if (in_set(std::span<const double>(x, d)) != complement) s += rule.w[j];
    }
    return s;
}

double radial_extent(const RadialDensity& m, double p) {
    switch (m.kind) {
        case RadialDensity::Kind::indicator: return std::pow(m.param, 1.0 / p);
        case RadialDensity::Kind::exp: return std::pow(40.0 / m.param, 1.0 / p);
        case RadialDensity::Kind::gaussian: return std::pow(9.0 * m.param, 1.0 / p);
    }
    return 1.0;
}

struct Worst {
    double rel = kInf;
    void see(double lhs_small, double rhs_big) {
        const double scale = std::max({std::fabs(lhs_small), std::fabs(rhs_big), 1e-300});
        const double g = (rhs_big - lhs_small) / scale;
        rel = std::min(rel, (lhs_small == 0.0 && rhs_big == 0.0) ? 0.0 : g);
    }
    Margin margin() const {
        Margin m;
        if (!std::isfinite(rel)) return m;
        m.margin = rel;
        m.tol = 1e-12;
        m.verdict = judge(m.margin, m.tol);
        return m;
    }
};

}  // namespace

double cone_fraction(double p, std::size_t d, double r, const std::function<bool(std::span<const double>)>& in_set,
                     std::size_t nodes) {
    return fraction(direction_rule(p, d, nodes), d, r, in_set, false);
}

LpSectionReport lp_section_inequalities(double p, std::size_t n, std::size_t k, const RadialDensity& m,
                                        const RadiusSet& A, const RadiusSet& B, const LpGrid& grid) {
    if (!(p >= 1.0)) throw std::invalid_argument("lp_section_inequalities: need p >= 1");
    if (k < 1 || k > 2 || n < k + 1 || n - k > 2)
        throw std::invalid_argument("lp_section_inequalities: blocks must have dimension 1 or 2");
    if (A.fn.dim() != k || B.fn.dim() != n - k) throw std::invalid_argument("lp_section_inequalities: set arity mismatch");
    if (grid.r_points < 2 || grid.s_points < 2 || grid.radial_nodes < 2 || grid.direction_nodes < 1)
        throw std::invalid_argument("lp_section_inequalities: grid too small");
    const std::size_t dB = n - k;
    const auto ruleA = direction_rule(p, k, grid.direction_nodes);
    const auto ruleB = direction_rule(p, dB, grid.direction_nodes);
    auto inA = [&A](std::span<const double> x) { return A.contains(x); };
    auto inB = [&B](std::span<const double> x) { return B.contains(x); };
    const double ext = radial_extent(m, p);
    auto mp = [&](double r, double s) { return m.m(std::pow(r, p) + std::pow(s, p)); };

    // Radial nodes for f_B and f_B'.
    const std::size_t L = grid.radial_nodes;
    std::vector<double> sl(L), cl(L), qB(L), qBc(L);
    for (std::size_t l = 0; l < L; ++l) {
        sl[l] = ext * (static_cast<double>(l) + 0.5) / static_cast<double>(L);
        cl[l] = std::pow(sl[l], static_cast<double>(dB) - 1.0);
        qB[l] = fraction(ruleB, dB, sl[l], inB, false);
        qBc[l] = fraction(ruleB, dB, sl[l], inB, true);
    }
    const std::size_t Rn = grid.r_points;
    std::vector<double> r(Rn), fB(Rn, 0.0), fBc(Rn, 0.0), gA(Rn), gAc(Rn);
    for (std::size_t i = 0; i < Rn; ++i) {
        r[i] = ext * (static_cast<double>(i) + 0.5) / static_cast<double>(Rn);
        for (std::size_t l = 0; l < L; ++l) {
            const double w = cl[l] * mp(r[i], sl[l]);
            fB[i] += w * qB[l];
            fBc[i] += w * qBc[l];
        }
        gA[i] = fraction(ruleA, k, r[i], inA, false);
        gAc[i] = fraction(ruleA, k, r[i], inA, true);
    }

    LpSectionReport rep;
    Worst w4, w5, w6, w7;
    for (std::size_t i = 0; i < Rn; ++i)
        for (std::size_t j = 0; j < i; ++j) {
            // r1 = r[i] >= r2 = r[j]
            w4.see(fB[j] * fBc[i], fB[i] * fBc[j]);
            w5.see(gA[i], gA[j]);
            w5.see(gAc[j], gAc[i]);
        }
    const std::size_t S = grid.s_points;
    std::vector<double> s(S), q(S), qc(S);
    for (std::size_t i = 0; i < S; ++i) {
        s[i] = ext * (static_cast<double>(i) + 0.5) / static_cast<double>(S);
        q[i] = fraction(ruleB, dB, s[i], inB, false);
        qc[i] = fraction(ruleB, dB, s[i], inB, true);
    }
    double gap = 0.0;
    for (std::size_t a = 0; a < S; ++a)
        for (std::size_t b = 0; b <= a; ++b)
            for (std::size_t c = 0; c < S; ++c)
                for (std::size_t d = 0; d <= c; ++d) {
                    // r1 = s[a] >= r2 = s[b], s1 = s[c] >= s2 = s[d]
                    const double lhs = mp(s[a], s[c]) * mp(s[b], s[d]);
                    const double rhs = mp(s[b], s[c]) * mp(s[a], s[d]);
                    w6.see(lhs, rhs);
                    const double scale = std::max(lhs, rhs);
                    if (scale > 0.0) gap = std::max(gap, std::fabs(rhs - lhs) / scale);
                }
    for (std::size_t i = 0; i < S; ++i)
        for (std::size_t j = 0; j < i; ++j) w7.see(q[i] * qc[j], qc[i] * q[j]);

    rep.checks[0] = w4.margin();
    rep.checks[1] = w5.margin();
    rep.checks[2] = w6.margin();
    rep.checks[3] = w7.margin();
    rep.cross_term_gap = gap;
    return rep;
}

// ---------------------------------------------------------------------------

void MomentSpec::validate() const {
    if (p == 0 || p % 2 != 0) throw std::invalid_argument("moment comparison needs an even positive p");
    if (a.empty()) throw std::invalid_argument("moment comparison needs coefficients");
}

namespace {

void even_exponents(std::size_t n, unsigned p, std::vector<unsigned>& cur, std::vector<std::vector<unsigned>>& out) {
    if (cur.size() + 1 == n) {
        cur.push_back(p);
        out.push_back(cur);
        cur.pop_back();
        return;
    }
    for (unsigned e = 0; e <= p; e += 2) {
        cur.push_back(e);
        even_exponents(n, p - e, cur, out);
        cur.pop_back();
    }
}

double multinomial(unsigned p, const std::vector<unsigned>& e) {
    double c = std::tgamma(p + 1.0);
    for (unsigned v : e) c /= std::tgamma(v + 1.0);
    return std::round(c);
}

}  // namespace

MomentReport moment_compare(const OrliczBall& K, const MomentSpec& spec, const QuadratureSpec& q) {
    spec.validate();
    const std::size_t n = K.dim();
    if (spec.a.size() != n) throw std::invalid_argument("moment_compare: coefficient count mismatch");
    if (n > 3) throw std::invalid_argument("moment_compare: quadrature mode needs n <= 3");
    std::vector<std::vector<unsigned>> terms;
    std::vector<unsigned> cur;
    even_exponents(n, spec.p, cur, terms);

    std::map<std::vector<unsigned>, std::size_t> index;
    auto need = [&](const std::vector<unsigned>& e) {
        if (!index.count(e)) index.emplace(e, index.size());
    };
    for (const auto& e : terms) {
        need(e);
        for (std::size_t i = 0; i < n; ++i)
            if (e[i] > 0) {
                std::vector<unsigned> u(n, 0);
                u[i] = e[i];
                need(u);
            }
    }
    std::vector<Output> outs(index.size() + 1);
    for (const auto& [e, k] : index) {
        outs[k + 1].weight = [e](std::span<const double> x) {
            double v = 1.0;
            for (std::size_t i = 0; i < e.size(); ++i) v *= ipow(x[i], e[i]);
            return v;
        };
    }
    const auto res = integrate_outputs(K, {}, outs, q);
    const double V = res[0].value, eV = res[0].error;
    if (!(V > 0.0)) throw std::invalid_argument("moment_compare: empty ball");
    auto M = [&](const std::vector<unsigned>& e) { return res[index.at(e) + 1].value / V; };
    auto eM = [&](const std::vector<unsigned>& e) {
        const auto& r = res[index.at(e) + 1];
        return (r.error + r.value / V * eV) / V;
    };

    MomentReport rep;
    rep.monomials = index.size();
    double lerr = 0.0, rerr = 0.0;
    for (const auto& e : terms) {
        double c = multinomial(spec.p, e);
        for (std::size_t i = 0; i < n; ++i) c *= ipow(spec.a[i], e[i]);
        rep.lhs += c * M(e);
        lerr += std::fabs(c) * eM(e);
        double prod = 1.0, dprod = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (e[i] == 0) continue;
            std::vector<unsigned> u(n, 0);
            u[i] = e[i];
            dprod = dprod * M(u) + prod * eM(u);
            prod *= M(u);
        }
        rep.rhs += c * prod;
        rerr += std::fabs(c) * dprod;
    }
    rep.margin = rep.rhs - rep.lhs;
    rep.tol = verdict_tol({lerr, rerr});
    rep.verdict = judge(rep.margin, rep.tol);
    return rep;
}

MomentReport moment_compare_sampled(const SampleBatch& full_batch, const MomentSpec& spec, std::uint64_t seed) {
    spec.validate();
    if (spec.a.size() != full_batch.dim) throw std::invalid_argument("moment_compare_sampled: coefficient count mismatch");
    const auto a = spec.a;
    const unsigned p = spec.p;
    auto fn = [a, p](std::span<const double> x) {
        double s = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * x[i];
        return ipow(s, p);
    };
    const auto copies = independent_copies(full_batch, seed);
    const auto l = estimate_mean(full_batch, fn);
    const auto r = estimate_mean(copies, fn);
    MomentReport rep;
    rep.lhs = l.mean;
    rep.rhs = r.mean;
    rep.margin = r.mean - l.mean;
    rep.tol = 4.0 * std::sqrt(l.se * l.se + r.se * r.se);
    rep.verdict = judge(rep.margin, rep.tol);
    return rep;
}

}  // namespace orlicz
