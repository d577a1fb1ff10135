#include "orlicz/concentration.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "orlicz/parallel.hpp"

namespace orlicz {

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

OrliczBall rescaled(const OrliczBall& K, const std::vector<double>& s) {
    std::vector<YoungFunction> f;
    for (std::size_t i = 0; i < K.dim(); ++i) f.push_back(K.young(i).compose_affine(1.0 / s[i], 0.0));
    return OrliczBall(std::move(f));
}

std::vector<double> column_moment(const SampleBatch& b, int power) {
    std::vector<double> m(b.dim, 0.0);
    for (std::size_t r = 0; r < b.rows(); ++r)
        for (std::size_t i = 0; i < b.dim; ++i) m[i] += std::pow(b.at(r, i), power);
    for (auto& v : m) v /= static_cast<double>(b.rows());
    return m;
}

}  // namespace

SampleBatch sample_uniform(const OrliczBall& K, std::size_t N, std::uint64_t seed, std::size_t workers,
                           std::size_t thinning) {
    SamplerOptions opt;
    opt.workers = workers;
    if (K.dim() <= 6) return sample_rejection(K, N, seed, opt);
    ChainOptions chain;
    chain.direction = Direction::coordinate;
    chain.burn_in = 200;
    chain.thinning = thinning;
    return sample_hit_and_run(K, N, seed, chain, opt);
}

IsotropicBall isotropize(const OrliczBall& K, std::size_t budget, std::uint64_t seed, std::size_t workers) {
    const std::size_t n = K.dim();
    if (budget < 100) throw std::invalid_argument("isotropize: sample budget too small");
    const auto fit = sample_uniform(K, budget, seed, workers);
    const auto m2 = column_moment(fit, 2);
    IsotropicReport rep;
    rep.scale.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(m2[i] > 0.0)) throw std::invalid_argument("isotropize: degenerate axis");
        rep.scale[i] = 1.0 / std::sqrt(m2[i]);
    }
    const OrliczBall diag = rescaled(K, rep.scale);
    // Symmetric body: full volume is 2^n times the quadrant volume.
    const auto vol = quadrant_volume(diag);
    const double log_full = vol.log_value + static_cast<double>(n) * std::log(2.0);
    rep.volume_scale = std::exp(-log_full / static_cast<double>(n));
    std::vector<double> total(n);
    for (std::size_t i = 0; i < n; ++i) total[i] = rep.scale[i] * rep.volume_scale;
    OrliczBall iso = rescaled(K, total);
    rep.scale = total;

    const auto vq = quadrant_volume(iso);
    rep.volume = std::exp(vq.log_value + static_cast<double>(n) * std::log(2.0));
    rep.volume_error = vq.value > 0.0 ? rep.volume * vq.error / vq.value : 0.0;

    const auto check = sample_uniform(iso, budget, sub_seed(seed, 0x15077), workers);
    rep.second_moments = column_moment(check, 2);
    rep.fourth_moments = column_moment(check, 4);
    double lo = kInf, hi = 0.0, mean = 0.0;
    for (double v : rep.second_moments) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
        mean += v;
    }
    mean /= static_cast<double>(n);
    rep.residual = (hi - lo) / mean;
    rep.L_K_squared = rep.volume_scale * rep.volume_scale;
    return {std::move(iso), std::move(rep)};
}

double shao_maximal_bound(const ShaoParams& p) {
    if (!(p.x > 0.0) || !(p.a > 0.0) || !(p.alpha > 0.0 && p.alpha < 1.0) || !(p.B_n >= 0.0) ||
        !(p.tail >= 0.0 && p.tail <= 1.0))
        throw std::invalid_argument("shao_maximal_bound: parameter out of range");
    double expo;
    if (p.B_n == 0.0) {
        // ln(1 + ax/B) grows without bound: the exponential term vanishes
        expo = 0.0;
    } else {
        const double arg = p.x * p.x * p.alpha / (2.0 * (p.a * p.x + p.B_n));
        expo = std::exp(-arg * (1.0 + 2.0 / 3.0 * std::log1p(p.a * p.x / p.B_n)));
    }
    return 2.0 * p.tail + 2.0 / (1.0 - p.alpha) * expo;
}

double default_a(std::size_t n, double t) {
    const double nt = static_cast<double>(n) * t;
    return std::cbrt(nt * nt);
}

double corollary17_bound(double L_K_squared, double t, double a, std::size_t n, double tail) {
    if (!(L_K_squared > 0.0) || !(t >= 0.0) || !(a >= 0.0) || n == 0)
        throw std::invalid_argument("corollary17_bound: parameter out of range");
    const double v = 5.0 * L_K_squared * L_K_squared;
    const double at = a * t;
    const double arg = static_cast<double>(n) * t * t / (4.0 * (at + v));
    return 2.0 * tail + 4.0 * std::exp(-arg * (1.0 + 2.0 / 3.0 * std::log1p(at / v)));
}

std::pair<double, double> wilson_interval(std::size_t k, std::size_t N, double z) {
    if (N == 0 || k > N) throw std::invalid_argument("wilson_interval: need 0 <= k <= N, N > 0");
    const double n = static_cast<double>(N);
    const double p = static_cast<double>(k) / n;
    const double z2 = z * z;
    const double den = 1.0 + z2 / n;
    const double centre = (p + z2 / (2.0 * n)) / den;
    const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / den;
    return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

std::vector<TailPoint> empirical_tail(const SampleBatch& batch, double L_K_squared, const std::vector<double>& t_grid) {
    const std::size_t N = batch.rows();
    const std::size_t n = batch.dim;
    if (N == 0) throw std::invalid_argument("empirical_tail: empty batch");
    std::vector<double> dev(N), mx(N);
    for (std::size_t r = 0; r < N; ++r) {
        double s = 0.0, m = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double x2 = batch.at(r, i) * batch.at(r, i);
            s += x2;
            m = std::max(m, std::fabs(x2 - L_K_squared));
        }
        dev[r] = std::fabs(s / static_cast<double>(n) - L_K_squared);
        mx[r] = m;
    }
    std::vector<TailPoint> out;
    for (double t : t_grid) {
        TailPoint pt;
        pt.t = t;
        std::size_t k = 0;
        for (double d : dev)
            if (d > t) ++k;
        pt.empirical = static_cast<double>(k) / static_cast<double>(N);
        std::tie(pt.ci_lo, pt.ci_hi) = wilson_interval(k, N);
        pt.a = default_a(n, t);
        std::size_t km = 0;
        for (double m : mx)
            if (m > pt.a) ++km;
        pt.tail_term = static_cast<double>(km) / static_cast<double>(N);
        pt.bound = corollary17_bound(L_K_squared, t, pt.a, n, pt.tail_term);
        pt.a_below_LK2 = pt.a < L_K_squared;
        pt.dominated = pt.ci_hi <= pt.bound;
        out.push_back(pt);
    }
    return out;
}

ConcentrationReport run_concentration(const OrliczBall& K, const ConcentrationOptions& opt) {
    ConcentrationReport rep;
    auto iso = isotropize(K, opt.iso_budget, sub_seed(opt.seed, 1), opt.workers);
    rep.iso = iso.report;
    std::vector<double> grid = opt.t_grid;
    if (grid.empty())
        for (int k = 0; k <= 20; ++k) grid.push_back(0.05 * k);
    const auto batch = sample_uniform(iso.ball, opt.N, sub_seed(opt.seed, 2), opt.workers);
    rep.curve = empirical_tail(batch, rep.iso.L_K_squared, grid);
    for (std::size_t i = 0; i < K.dim(); ++i) {
        const double m2 = rep.iso.second_moments[i];
        rep.kurtosis_max = std::max(rep.kurtosis_max, rep.iso.fourth_moments[i] / (m2 * m2));
    }
    for (const auto& p : rep.curve)
        if (!p.dominated) rep.verdict = Verdict::fail;
    return rep;
}

void write_tail_csv(const std::vector<TailPoint>& curve, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "t,empirical,ci_lo,ci_hi,bound,a,tail_term,a_below_LK2,dominated\n";
    for (const auto& p : curve)
        out << num(p.t) << ',' << num(p.empirical) << ',' << num(p.ci_lo) << ',' << num(p.ci_hi) << ','
            << num(p.bound) << ',' << num(p.a) << ',' << num(p.tail_term) << ',' << (p.a_below_LK2 ? 1 : 0) << ','
            << (p.dominated ? 1 : 0) << '\n';
}

}  // namespace orlicz
