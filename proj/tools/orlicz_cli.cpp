// Command-line front end: volumes, verification suites, moment comparison,
// concentration curves and sampling for Orlicz balls.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "orlicz/ball.hpp"
#include "orlicz/concentration.hpp"
#include "orlicz/parallel.hpp"
#include "orlicz/report.hpp"
#include "orlicz/samplers.hpp"
#include "orlicz/suites.hpp"
#include "orlicz/verify.hpp"

namespace fs = std::filesystem;
using namespace orlicz;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct Common {
    std::string ball;
    std::vector<std::string> csets;
    std::size_t n = 0;
    std::uint64_t seed = 1;
    std::size_t nodes = 0;
    std::size_t levels = 0;
    double tol = 0.0;
    std::string out = ".";
    std::size_t workers = 1;
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--ball", c.ball, "Ball spec (JSON file)")->check(CLI::ExistingFile);
    cmd->add_option("--cset", c.csets, "C-set spec (JSON file); may be repeated")->check(CLI::ExistingFile);
    cmd->add_option("--n", c.n, "Sample size (0: command default)");
    cmd->add_option("--seed", c.seed, "Base seed");
    cmd->add_option("--nodes", c.nodes, "Quadrature cells per axis at the finest level (0: default)")
        ->check(CLI::Range(std::size_t{0}, std::size_t{1} << 16));
    cmd->add_option("--levels", c.levels, "Quadrature refinement levels (0: default)")
        ->check(CLI::Range(std::size_t{0}, std::size_t{8}));
    cmd->add_option("--tol", c.tol, "Extra absolute tolerance added to every check")->check(CLI::NonNegativeNumber);
    cmd->add_option("--out", c.out, "Output directory");
    cmd->add_option("--workers", c.workers, "Worker threads")->check(CLI::Range(std::size_t{1}, std::size_t{256}));
}

std::optional<OrliczBall> load_ball(const Common& c) {
    if (c.ball.empty()) return std::nullopt;
    return parse_ball(read_text(c.ball));
}

QuadratureSpec quad_spec(const Common& c, std::size_t nodes = 256) {
    QuadratureSpec s;
    s.nodes = c.nodes ? c.nodes : nodes;
    s.levels = c.levels ? c.levels : 3;
    s.workers = c.workers;
    if (s.nodes < 8 || s.levels < 2) throw std::invalid_argument("need --nodes >= 8 and --levels >= 2");
    return s;
}

std::string out_path(const Common& c, const std::string& name) {
    fs::create_directories(c.out);
    return (fs::path(c.out) / name).string();
}

int report_rows(const Common& c, const std::string& name, const std::vector<CheckRow>& rows) {
    write_text(out_path(c, name + ".csv"), rows_csv(rows));
    write_text(out_path(c, name + ".json"), summary_json(name, c.seed, rows));
    const Counts k = count_verdicts(rows);
    std::printf("%s: %zu rows, %zu pass, %zu fail, %zu vacuous\n", name.c_str(), rows.size(), k.pass, k.fail,
                k.vacuous);
    for (const auto& r : rows)
        if (r.verdict == Verdict::fail)
            std::printf("  FAIL %s %s margin=%s tol=%s\n", r.check_id.c_str(), hash_hex(r.instance_hash).c_str(),
                        format_double(r.margin).c_str(), format_double(r.tol).c_str());
    return k.fail == 0 ? kPass : kFail;
}

int cmd_volume(const Common& c) {
    const auto K = load_ball(c);
    if (!K) throw std::invalid_argument("volume needs --ball");
    const std::size_t n = K->dim();
    nlohmann::json j;
    j["dim"] = n;
    if (n <= 4) {
        const auto r = integrate_quadrant(*K, {}, Region{}, quad_spec(c));
        std::printf("quadrant volume %.12g +- %.3g (quadrature)\n", r.value, r.error);
        j["method"] = "quadrature";
        j["value"] = r.value;
        j["error"] = r.error;
    } else {
        const std::size_t N = c.n ? c.n : 1000000;
        double box = 1.0;
        for (double R : K->radii()) box *= R;
        const std::uint64_t base = sub_seed(c.seed, 0x701);
        const std::size_t streams = 16;
        std::vector<std::size_t> hits(streams, 0);
        parallel_for(streams, c.workers, [&](std::size_t s) {
            Engine rng(sub_seed(base, s));
            std::uniform_real_distribution<double> u(0.0, 1.0);
            std::vector<double> x(n);
            const std::size_t m = N / streams + (s < N % streams ? 1 : 0);
            for (std::size_t i = 0; i < m; ++i) {
                for (std::size_t k = 0; k < n; ++k) x[k] = K->radius(k) * u(rng);
                if (K->contains(x)) ++hits[s];
            }
        });
        std::size_t h = 0;
        for (auto v : hits) h += v;
        const double p = static_cast<double>(h) / static_cast<double>(N);
        const auto ci = wilson_interval(h, N);
        std::printf("quadrant volume %.6g, 95%% CI [%.6g, %.6g] (Monte Carlo, N=%zu)\n", p * box, ci.first * box,
                    ci.second * box, N);
        j["method"] = "monte_carlo";
        j["value"] = p * box;
        j["ci"] = {ci.first * box, ci.second * box};
        j["N"] = N;
    }
    const auto conv = quadrant_volume(*K);
    std::printf("quadrant volume %.12g +- %.3g (distribution convolution)\n", conv.value, conv.error);
    j["convolution"] = {{"value", conv.value}, {"error", conv.error}};
    write_text(out_path(c, "volume.json"), j.dump(2) + "\n");
    return kPass;
}

SuiteOptions suite_options(const Common& c, std::size_t instances) {
    SuiteOptions o;
    o.seed = c.seed;
    o.workers = c.workers;
    o.instances = instances;
    o.samples = c.n;
    o.nodes = c.nodes;
    o.levels = c.levels;
    o.tol_floor = c.tol;
    o.ball = load_ball(c);
    return o;
}

int cmd_verify(const Common& c, const std::string& suite, const std::string& part, std::size_t instances) {
    const SuiteOptions o = suite_options(c, instances);
    if (!part.empty()) return report_rows(c, "verify_" + part, run_part(part, o));
    return report_rows(c, "verify_" + suite, run_suite(suite, o));
}

int cmd_four_term(const Common& c, const std::vector<std::size_t>& I, const std::vector<std::size_t>& J) {
    const auto K = load_ball(c);
    if (!K || c.csets.size() != 2) throw std::invalid_argument("four-term needs --ball and two --cset files");
    const CSet A = parse_cset(read_text(c.csets[0]));
    const CSet B = parse_cset(read_text(c.csets[1]));
    if (A.dim() != I.size() || B.dim() != J.size()) throw std::invalid_argument("c-set dimensions must match --I/--J");
    const auto r = four_term_check(*K, A, I, B, J, quad_spec(c));
    std::printf("masses AB=%.12g AB'=%.12g A'B=%.12g A'B'=%.12g\n", r.masses[0], r.masses[1], r.masses[2],
                r.masses[3]);
    CheckRow row{"four_term", fnv1a(K->describe() + A.describe() + B.describe()), r.margin, r.tol + c.tol, r.verdict};
    if (row.verdict != Verdict::vacuous) row.verdict = judge(row.margin, row.tol);
    return report_rows(c, "four_term", {row});
}

int cmd_moments(const Common& c, const std::vector<double>& a, unsigned p, std::size_t instances) {
    const auto K = load_ball(c);
    if (!K) {
        const SuiteOptions o = suite_options(c, instances);
        return report_rows(c, "moments", run_suite("moments", o));
    }
    MomentSpec s{a.empty() ? std::vector<double>(K->dim(), 1.0) : a, p};
    s.validate();
    MomentReport r;
    if (K->dim() <= 3) {
        r = moment_compare(*K, s, quad_spec(c, 1024));
    } else {
        SamplerOptions so;
        so.workers = c.workers;
        so.full = true;
        const auto batch = sample_rejection(*K, c.n ? c.n : 1000000, sub_seed(c.seed, 1), so);
        r = moment_compare_sampled(batch, s, sub_seed(c.seed, 2));
    }
    std::printf("E(sum a_i X_i)^%u = %.12g, independent coordinates: %.12g\n", p, r.lhs, r.rhs);
    std::string text = K->describe();
    for (double v : s.a) text += format_double(v) + ",";
    CheckRow row{"moments", fnv1a(text), r.margin, r.tol + c.tol, r.verdict};
    if (row.verdict != Verdict::vacuous) row.verdict = judge(row.margin, row.tol);
    return report_rows(c, "moments", {row});
}

int cmd_concentration(const Common& c, std::size_t budget) {
    const auto given = load_ball(c);
    const OrliczBall K = given ? *given : OrliczBall::cube(64, 0.5);
    ConcentrationOptions o;
    o.N = c.n ? c.n : 100000;
    o.iso_budget = budget;
    o.seed = c.seed;
    o.workers = c.workers;
    const auto rep = run_concentration(K, o);
    write_tail_csv(rep.curve, out_path(c, "concentration.csv"));
    nlohmann::json j;
    j["dim"] = K.dim();
    j["seed"] = c.seed;
    j["N"] = o.N;
    j["L_K_squared"] = format_double(rep.iso.L_K_squared);
    j["residual"] = format_double(rep.iso.residual);
    j["volume"] = format_double(rep.iso.volume);
    j["kurtosis_max"] = format_double(rep.kurtosis_max);
    j["verdict"] = to_string(rep.verdict);
    write_text(out_path(c, "concentration.json"), j.dump(2) + "\n");
    std::printf("n=%zu L_K^2=%.6g residual=%.3g kurtosis_max=%.3g\n", K.dim(), rep.iso.L_K_squared, rep.iso.residual,
                rep.kurtosis_max);
    for (const auto& pt : rep.curve)
        std::printf("  t=%.2f empirical=%.6g ci_hi=%.6g bound=%.6g%s\n", pt.t, pt.empirical, pt.ci_hi, pt.bound,
                    pt.dominated ? "" : "  NOT DOMINATED");
    std::printf("domination: %s\n", to_string(rep.verdict).c_str());
    return rep.verdict == Verdict::fail ? kFail : kPass;
}

int cmd_sample(const Common& c, const std::string& method, std::size_t burn_in, std::size_t thinning, bool full) {
    const auto K = load_ball(c);
    if (!K) throw std::invalid_argument("sample needs --ball");
    const std::size_t N = c.n ? c.n : 10000;
    SamplerOptions so;
    so.workers = c.workers;
    so.full = full;
    SampleBatch b;
    if (method == "rejection") {
        b = sample_rejection(*K, N, c.seed, so);
    } else {
        ChainOptions ch;
        ch.burn_in = burn_in;
        ch.thinning = thinning;
        ch.direction = method == "coordinate" ? Direction::coordinate : Direction::sphere;
        b = sample_hit_and_run(*K, N, c.seed, ch, so);
    }
    write_batch_csv(b, out_path(c, "sample.csv"));
    write_batch_metadata(b, out_path(c, "sample.json"));
    std::printf("%zu points written (%s)\n", b.rows(), to_string(b.method).c_str());
    return kPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical checks of negative association for generalized Orlicz balls"};
    app.require_subcommand(1);

    Common c;
    auto* volume = app.add_subcommand("volume", "Quadrant volume of a ball");
    add_common(volume, c);

    std::string suite, part;
    std::size_t instances = 0;
    auto* verify = app.add_subcommand("verify", "Run a verification suite");
    add_common(verify, c);
    verify->add_option("--suite", suite, "Suite name")->required()->check(CLI::IsMember(suite_names()));
    verify->add_option("--part", part, "Run a single part of the suite");
    verify->add_option("--instances", instances, "Instances per part (0: default)");

    std::vector<std::size_t> I, J;
    auto* four = app.add_subcommand("four-term", "Four-term inequality for one ball and two c-sets");
    add_common(four, c);
    four->add_option("--I", I, "Axes of the first c-set")->required();
    four->add_option("--J", J, "Axes of the second c-set")->required();

    std::vector<double> coef;
    unsigned power = 4;
    auto* moments = app.add_subcommand("moments", "Moment comparison (random suite without --ball)");
    add_common(moments, c);
    moments->add_option("--a", coef, "Coefficients a_i (default all 1)");
    moments->add_option("--p", power, "Even moment order");
    moments->add_option("--instances", instances, "Instances per part of the random suite");

    std::size_t budget = 20000;
    auto* conc = app.add_subcommand("concentration", "Tail curve of sum X_i^2 / n against the bound");
    add_common(conc, c);
    conc->add_option("--iso-budget", budget, "Sample size for isotropic rescaling")->check(CLI::Range(100, 100000000));

    std::string method = "rejection";
    std::size_t burn_in = 1000, thinning = 1;
    bool full = false;
    auto* sample = app.add_subcommand("sample", "Draw a uniform sample");
    add_common(sample, c);
    sample->add_option("--method", method, "rejection | sphere | coordinate")
        ->check(CLI::IsMember({"rejection", "sphere", "coordinate"}));
    sample->add_option("--burn-in", burn_in, "Chain burn-in");
    sample->add_option("--thinning", thinning, "Chain thinning")->check(CLI::PositiveNumber);
    sample->add_flag("--full", full, "Sample the whole ball rather than the positive quadrant");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kPass : kUsage;
    }

    try {
        if (*volume) return cmd_volume(c);
        if (*verify) {
            if (!part.empty()) {
                const auto& ps = suite_parts(suite);
                if (std::find(ps.begin(), ps.end(), part) == ps.end())
                    throw std::invalid_argument("part \"" + part + "\" is not in suite " + suite);
            }
            return cmd_verify(c, suite, part, instances);
        }
        if (*four) return cmd_four_term(c, I, J);
        if (*moments) return cmd_moments(c, coef, power, instances);
        if (*conc) return cmd_concentration(c, budget);
        if (*sample) return cmd_sample(c, method, burn_in, thinning, full);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kUsage;
    }
    return kUsage;
}
