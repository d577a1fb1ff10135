#include "orlicz/samplers.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <stdexcept>

#include "json.hpp"
#include "orlicz/parallel.hpp"

namespace orlicz {

std::string to_string(SampleMethod m) {
    switch (m) {
        case SampleMethod::rejection: return "rejection";
        case SampleMethod::hit_and_run: return "hit-and-run";
        case SampleMethod::lp_radial: return "lp-radial";
        case SampleMethod::lp_surface: return "lp-surface";
        case SampleMethod::resample: return "independent-copies";
    }
    return "?";
}

namespace {

constexpr std::uint64_t kPilotStream = 1ULL << 40;
constexpr std::uint64_t kSignStream = 1ULL << 41;

std::size_t quota(std::size_t N, std::size_t S, std::size_t k) { return N / S + (k < N % S ? 1 : 0); }

// Runs `body(k, rng, out)` for each stream and concatenates the rows in stream order.
template <class Body>
std::vector<double> run_streams(std::size_t N, std::size_t S, std::uint64_t seed, std::size_t workers, Body body) {
    std::vector<std::vector<double>> parts(S);
    parallel_for(S, workers, [&](std::size_t k) {
        Engine rng(sub_seed(seed, k));
        body(k, quota(N, S, k), rng, parts[k]);
    });
    std::vector<double> out;
    for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
    return out;
}

void flip_signs(std::span<double> x, Engine& rng) {
    for (double& v : x)
        if (rng() & 1ULL) v = -v;
}

}  // namespace

SampleBatch sample_rejection(const OrliczBall& K, std::size_t N, std::uint64_t seed, const SamplerOptions& opt) {
    const std::size_t n = K.dim();
    if (n > 10) throw std::invalid_argument("sample_rejection: n > 10, use sample_hit_and_run");
    if (N == 0) throw std::invalid_argument("sample_rejection: N must be positive");
    const auto& R = K.radii();
    {
        Engine rng(sub_seed(seed, kPilotStream));
        std::uniform_real_distribution<double> u(0.0, 1.0);
        const std::size_t pilot = 20000;
        std::size_t hit = 0;
        std::vector<double> x(n);
        for (std::size_t t = 0; t < pilot; ++t) {
            for (std::size_t i = 0; i < n; ++i) x[i] = R[i] * u(rng);
            hit += K.contains(x) ? 1 : 0;
        }
        if (static_cast<double>(hit) / static_cast<double>(pilot) < 1e-4)
            throw std::invalid_argument("sample_rejection: acceptance below 1e-4, use sample_hit_and_run");
    }
    const std::size_t S = std::max<std::size_t>(1, std::min(opt.streams, N));
    std::vector<std::size_t> proposals(S, 0);
    SampleBatch b;
    b.dim = n;
    b.seed = seed;
    b.method = SampleMethod::rejection;
    b.streams = S;
    b.data = run_streams(N, S, seed, opt.workers, [&](std::size_t k, std::size_t q, Engine& rng, std::vector<double>& out) {
        std::uniform_real_distribution<double> u(0.0, 1.0);
        std::vector<double> x(n);
        out.reserve(q * n);
        std::size_t tries = 0;
        for (std::size_t got = 0; got < q;) {
            for (std::size_t i = 0; i < n; ++i) x[i] = R[i] * u(rng);
            ++tries;
            if (!K.contains(x)) continue;
            if (opt.full) flip_signs(x, rng);
            out.insert(out.end(), x.begin(), x.end());
            ++got;
        }
        proposals[k] = tries;
    });
    std::size_t total = 0;
    for (auto t : proposals) total += t;
    b.acceptance = static_cast<double>(N) / static_cast<double>(total);
    return b;
}

SampleBatch sample_hit_and_run(const OrliczBall& K, std::size_t N, std::uint64_t seed, const ChainOptions& chain,
                               const SamplerOptions& opt) {
    const std::size_t n = K.dim();
    if (N == 0) throw std::invalid_argument("sample_hit_and_run: N must be positive");
    if (chain.thinning == 0) throw std::invalid_argument("sample_hit_and_run: thinning must be >= 1");
    const auto& R = K.radii();
    std::vector<double> start(n);
    for (std::size_t i = 0; i < n; ++i) start[i] = 0.5 * K.young(i).inverse(0.5 / static_cast<double>(n));

    const std::size_t S = std::max<std::size_t>(1, std::min(opt.streams, N));
    std::vector<std::vector<double>> lag(S, std::vector<double>(n, 0.0));
    SampleBatch b;
    b.dim = n;
    b.seed = seed;
    b.method = SampleMethod::hit_and_run;
    b.burn_in = chain.burn_in;
    b.thinning = chain.thinning;
    b.streams = S;
    b.data = run_streams(N, S, seed, opt.workers, [&](std::size_t k, std::size_t q, Engine& rng, std::vector<double>& out) {
        std::normal_distribution<double> gauss(0.0, 1.0);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        Engine signs(sub_seed(seed, kSignStream + k));
        std::vector<double> x = start, d(n), y(n);
        auto inside = [&](double t) {
            for (std::size_t i = 0; i < n; ++i) y[i] = std::max(0.0, x[i] + t * d[i]);
            return K.level_sum(y) <= 1.0;
        };
        auto end = [&](double tmax) {
            if (inside(tmax)) return tmax;
            double lo = 0.0, hi = tmax;
            for (int it = 0; it < 60; ++it) {
                const double mid = 0.5 * (lo + hi);
                (inside(mid) ? lo : hi) = mid;
            }
            return lo;
        };
        auto step = [&] {
            if (chain.direction == Direction::coordinate) {
                // running level sum, refreshed once per sweep
                double total = K.level_sum(x);
                for (std::size_t i = 0; i < n; ++i) {
                    const double rest = total - K.young(i)(x[i]);
                    const double top = std::min(K.young(i).inverse(std::max(0.0, 1.0 - rest)), R[i]);
                    x[i] = top * u(rng);
                    total = rest + K.young(i)(x[i]);
                }
                return;
            }
            double norm = 0.0;
            for (auto& v : d) {
                v = gauss(rng);
                norm += v * v;
            }
            norm = std::sqrt(norm);
            for (auto& v : d) v /= norm;
            double tp = kInf, tm = kInf;
            for (std::size_t i = 0; i < n; ++i) {
                if (d[i] > 0.0) {
                    tp = std::min(tp, (R[i] - x[i]) / d[i]);
                    tm = std::min(tm, x[i] / d[i]);
                } else if (d[i] < 0.0) {
                    tp = std::min(tp, -x[i] / d[i]);
                    tm = std::min(tm, (x[i] - R[i]) / d[i]);
                }
            }
            tp = std::max(0.0, tp);
            tm = std::max(0.0, tm);
            const double hi = end(tp);
            for (auto& v : d) v = -v;
            const double lo = end(tm);
            for (auto& v : d) v = -v;
            const double t = -lo + (hi + lo) * u(rng);
            for (std::size_t i = 0; i < n; ++i) x[i] = std::max(0.0, x[i] + t * d[i]);
        };
        for (std::size_t s = 0; s < chain.burn_in; ++s) step();
        out.reserve(q * n);
        for (std::size_t got = 0; got < q; ++got) {
            for (std::size_t s = 0; s < chain.thinning; ++s) step();
            const std::size_t at = out.size();
            out.insert(out.end(), x.begin(), x.end());
            if (opt.full) flip_signs(std::span<double>(out.data() + at, n), signs);
        }
        std::vector<double> col(q);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t r = 0; r < q; ++r) col[r] = out[r * n + i];
            lag[k][i] = lag1_autocorrelation(col);
        }
    });
    b.lag1.assign(n, 0.0);
    for (std::size_t k = 0; k < S; ++k)
        for (std::size_t i = 0; i < n; ++i)
            b.lag1[i] += lag[k][i] * static_cast<double>(quota(N, S, k)) / static_cast<double>(N);
    return b;
}

double RadialDensity::m(double s) const {
    switch (kind) {
        case Kind::exp: return std::exp(-param * s);
        case Kind::indicator: return s <= param ? 1.0 : 0.0;
        case Kind::gaussian: return std::exp(-s * s / (2.0 * param * param));
    }
    return 0.0;
}

std::string RadialDensity::describe() const {
    static const char* names[] = {"exp", "indicator", "gaussian"};
    char buf[96];
    std::snprintf(buf, sizeof buf, "%s(%.17g;p=%.17g)", names[static_cast<int>(kind)], param, p);
    return buf;
}

namespace {

// Fills x with a cone-measure point of the unit l_p sphere; returns nothing.
void cone_direction(std::span<double> x, double p, Engine& rng, std::gamma_distribution<double>& g) {
    double s = 0.0;
    for (double& v : x) {
        const double G = g(rng);
        v = std::pow(G, 1.0 / p);
        s += G;
    }
    const double norm = std::pow(s, 1.0 / p);
    for (double& v : x) v /= norm;
}

}  // namespace

SampleBatch sample_lp(std::size_t n, const RadialDensity& density, std::size_t N, std::uint64_t seed,
                      const SamplerOptions& opt) {
    if (!(density.p >= 1.0)) throw std::invalid_argument("sample_lp: p must be >= 1");
    if (!(density.param > 0.0) || !std::isfinite(density.param))
        throw std::invalid_argument("sample_lp: density is not normalizable");
    if (n == 0 || N == 0) throw std::invalid_argument("sample_lp: need n, N > 0");
    const double p = density.p;
    const double nd = static_cast<double>(n);
    const std::size_t S = std::max<std::size_t>(1, std::min(opt.streams, N));
    SampleBatch b;
    b.dim = n;
    b.seed = seed;
    b.method = SampleMethod::lp_radial;
    b.streams = S;
    b.data = run_streams(N, S, seed, opt.workers, [&](std::size_t, std::size_t q, Engine& rng, std::vector<double>& out) {
        std::gamma_distribution<double> dir(1.0 / p, 1.0);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        std::gamma_distribution<double> rexp(nd / p, 1.0 / density.param);
        std::gamma_distribution<double> rgauss(nd / (2.0 * p), 2.0 * density.param * density.param);
        out.resize(q * n);
        for (std::size_t r = 0; r < q; ++r) {
            std::span<double> x(out.data() + r * n, n);
            cone_direction(x, p, rng, dir);
            double radius = 0.0;
            switch (density.kind) {
                case RadialDensity::Kind::indicator:
                    radius = std::pow(density.param, 1.0 / p) * std::pow(u(rng), 1.0 / nd);
                    break;
                case RadialDensity::Kind::exp: radius = std::pow(rexp(rng), 1.0 / p); break;
                case RadialDensity::Kind::gaussian: radius = std::pow(std::sqrt(rgauss(rng)), 1.0 / p); break;
            }
            for (double& v : x) v *= radius;
            if (opt.full) flip_signs(x, rng);
        }
    });
    return b;
}

SampleBatch sample_lp_surface(std::size_t n, double p, std::size_t N, std::uint64_t seed, const SamplerOptions& opt) {
    if (!(p >= 1.0)) throw std::invalid_argument("sample_lp_surface: p must be >= 1");
    if (n == 0 || N == 0) throw std::invalid_argument("sample_lp_surface: need n, N > 0");
    const std::size_t S = std::max<std::size_t>(1, std::min(opt.streams, N));
    SampleBatch b;
    b.dim = n;
    b.seed = seed;
    b.method = SampleMethod::lp_surface;
    b.streams = S;
    b.data = run_streams(N, S, seed, opt.workers, [&](std::size_t, std::size_t q, Engine& rng, std::vector<double>& out) {
        std::gamma_distribution<double> dir(1.0 / p, 1.0);
        out.resize(q * n);
        for (std::size_t r = 0; r < q; ++r) {
            std::span<double> x(out.data() + r * n, n);
            cone_direction(x, p, rng, dir);
            if (opt.full) flip_signs(x, rng);
        }
    });
    return b;
}

SampleBatch independent_copies(const SampleBatch& batch, std::uint64_t seed) {
    const std::size_t N = batch.rows();
    if (N < 2) throw std::invalid_argument("independent_copies: need at least 2 rows");
    SampleBatch out;
    out.dim = batch.dim;
    out.seed = seed;
    out.method = SampleMethod::resample;
    out.streams = batch.dim;
    out.data.resize(batch.data.size());
    for (std::size_t j = 0; j < batch.dim; ++j) {
        Engine rng(sub_seed(seed, j));
        std::uniform_int_distribution<std::size_t> pick(0, N - 1);
        for (std::size_t r = 0; r < N; ++r) out.data[r * batch.dim + j] = batch.at(pick(rng), j);
    }
    return out;
}

double lag1_autocorrelation(std::span<const double> s) {
    const std::size_t N = s.size();
    if (N < 3) return 0.0;
    double mean = 0.0;
    for (double v : s) mean += v;
    mean /= static_cast<double>(N);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
        den += (s[i] - mean) * (s[i] - mean);
        if (i + 1 < N) num += (s[i] - mean) * (s[i + 1] - mean);
    }
    return den > 0.0 ? num / den : 0.0;
}

MeanEstimate estimate_mean(const SampleBatch& batch, const std::function<double(std::span<const double>)>& fn) {
    const std::size_t N = batch.rows();
    if (N == 0) throw std::invalid_argument("estimate_mean: empty batch");
    std::vector<double> v(N);
    for (std::size_t i = 0; i < N; ++i) v[i] = fn(batch.row(i));
    MeanEstimate e;
    for (double x : v) e.mean += x;
    e.mean /= static_cast<double>(N);
    if (N < 2) return e;
    const std::size_t B = 32;
    if (batch.is_mcmc() && N >= 2 * B) {
        std::vector<double> means(B, 0.0);
        for (std::size_t k = 0; k < B; ++k) {
            const std::size_t a = k * N / B, z = (k + 1) * N / B;
            for (std::size_t i = a; i < z; ++i) means[k] += v[i];
            means[k] /= static_cast<double>(z - a);
        }
        double ss = 0.0;
        for (double m : means) ss += (m - e.mean) * (m - e.mean);
        e.se = std::sqrt(ss / static_cast<double>(B - 1) / static_cast<double>(B));
    } else {
        double ss = 0.0;
        for (double x : v) ss += (x - e.mean) * (x - e.mean);
        e.se = std::sqrt(ss / static_cast<double>(N - 1) / static_cast<double>(N));
    }
    return e;
}

void write_batch_csv(const SampleBatch& batch, const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw std::runtime_error("cannot write " + path);
    for (std::size_t j = 0; j < batch.dim; ++j) std::fprintf(f, "%sx%zu", j ? "," : "", j + 1);
    std::fputc('\n', f);
    for (std::size_t r = 0; r < batch.rows(); ++r) {
        for (std::size_t j = 0; j < batch.dim; ++j) std::fprintf(f, "%s%.17g", j ? "," : "", batch.at(r, j));
        std::fputc('\n', f);
    }
    std::fclose(f);
}

void write_batch_metadata(const SampleBatch& batch, const std::string& path) {
    nlohmann::json j;
    j["seed"] = batch.seed;
    j["method"] = to_string(batch.method);
    j["rows"] = batch.rows();
    j["dim"] = batch.dim;
    j["burn_in"] = batch.burn_in;
    j["thinning"] = batch.thinning;
    j["streams"] = batch.streams;
    j["acceptance"] = batch.acceptance;
    j["lag1"] = batch.lag1;
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(2) << '\n';
}

}  // namespace orlicz
