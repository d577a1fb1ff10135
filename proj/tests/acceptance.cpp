// Acceptance runner: one PASS/FAIL line per criterion, exit 1 if any fails.
//
//   acceptance [--workers N] [--only K]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "orlicz/concentration.hpp"
#include "orlicz/report.hpp"
#include "orlicz/samplers.hpp"
#include "orlicz/suites.hpp"

using namespace orlicz;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
};

struct Criterion {
    int id;
    const char* name;
    double limit_s;  ///< 0: no runtime bound
    std::function<Outcome()> run;
};

std::size_t g_workers = 1;

SuiteOptions opts() {
    SuiteOptions o;
    o.workers = g_workers;
    return o;
}

/// Each entry: part, options, minimum number of non-vacuous rows.
struct PartRun {
    std::string part;
    SuiteOptions opt;
    std::size_t min_rows;
};

Outcome run_parts(const std::vector<PartRun>& runs) {
    Outcome out;
    for (const auto& r : runs) {
        const auto rows = run_part(r.part, r.opt);
        const Counts c = count_verdicts(rows);
        char buf[160];
        std::snprintf(buf, sizeof buf, "%s%s %zu/%zu/%zu", out.detail.empty() ? "" : "; ", r.part.c_str(), c.pass,
                      c.fail, c.vacuous);
        out.detail += buf;
        if (c.fail != 0 || c.pass < r.min_rows) out.ok = false;
        for (const auto& row : rows)
            if (row.verdict == Verdict::fail) {
                std::snprintf(buf, sizeof buf, " [%s %s margin %.3g tol %.3g]", row.check_id.c_str(),
                              hash_hex(row.instance_hash).c_str(), row.margin, row.tol);
                out.detail += buf;
                break;
            }
    }
    return out;
}

PartRun part(const std::string& name, std::size_t min_rows, std::size_t samples = 0) {
    SuiteOptions o = opts();
    o.samples = samples;
    return {name, o, min_rows};
}

// Reproducibility: every CSV writer, run twice at 1 worker and once at 4.

using Producer = std::function<void(std::size_t workers, const fs::path& file)>;

Outcome reproducible(const std::vector<std::pair<std::string, Producer>>& producers) {
    const fs::path dir = fs::temp_directory_path() / "orlicz_acceptance";
    fs::remove_all(dir);
    fs::create_directories(dir);
    Outcome out;
    std::size_t same = 0;
    for (const auto& [name, make] : producers) {
        const fs::path a = dir / (name + "_1a.csv"), b = dir / (name + "_1b.csv"), c = dir / (name + "_4.csv");
        make(1, a);
        make(1, b);
        make(4, c);
        const std::string ta = read_text(a.string());
        if (ta == read_text(b.string()) && ta == read_text(c.string()) && ta.size() > 64) {
            ++same;
        } else {
            out.ok = false;
            out.detail += " differs:" + name;
        }
    }
    out.detail = std::to_string(same) + "/" + std::to_string(producers.size()) + " CSV outputs identical" + out.detail;
    fs::remove_all(dir);
    return out;
}

Producer suite_csv(const std::string& name, std::size_t instances, std::size_t samples = 0) {
    return [=](std::size_t workers, const fs::path& file) {
        SuiteOptions o;
        o.workers = workers;
        o.instances = instances;
        o.samples = samples;
        o.seed = 20;
        write_text(file.string(), rows_csv(run_part(name, o)));
    };
}

std::vector<Criterion> criteria() {
    return {
        {1, "independence baseline (cube ball)", 10,
         [] { return run_parts({part("four_term.cube", 20), part("na_cov.cube", 1, 1000000)}); }},
        {2, "exact l1 oracle", 30, [] { return run_parts({part("l1_oracle", 6, 1000000)}); }},
        {3, "four-term inequality, 500 instances", 300, [] { return run_parts({part("four_term", 490)}); }},
        {4, "four-point section lemma, 500 instances", 120,
         [] { return run_parts({part("bm", 450), part("bm.degenerate", 1)}); }},
        {5, "theta and slab-ratio monotonicity, 100 instances", 180,
         [] { return run_parts({part("theta.monotone", 90), part("theta.slab", 90)}); }},
        {6, "theta(A) >= theta(K) >= theta(A'), 200 instances", 300, [] { return run_parts({part("main", 300)}); }},
        {7, "l_p section inequalities, p in {1,2,3}", 120, [] { return run_parts({part("lp.sections", 600)}); }},
        {8, "moment comparison", 180,
         [] {
             return run_parts({part("moments.p2", 10), part("moments.l1_oracle", 3), part("moments.random", 100)});
         }},
        {9, "l_p radius-wise negative association", 600,
         [] { return run_parts({part("lp.radius_na", 240, 1000000), part("lp.grid_oracle", 1)}); }},
        {10, "concentration domination", 600, [] { return run_parts({part("concentration", 120)}); }},
        {11, "restriction exactness, 100 instances", 60, [] { return run_parts({part("lemma.restriction", 90)}); }},
        {12, "properize volume loss and containment", 120,
         [] { return run_parts({part("lemma.properize", 80, 1000000)}); }},
        {13, "byte-identical CSV across reruns and workers {1,4}", 0,
         [] {
             return reproducible({
                 {"four_term", suite_csv("four_term", 20)},
                 {"na_cov", suite_csv("na_cov", 3, 50000)},
                 {"theta_monotone", suite_csv("theta.monotone", 5)},
                 {"bm", suite_csv("bm", 20)},
                 {"main", suite_csv("main", 5)},
                 {"lp_radius_na", suite_csv("lp.radius_na", 1, 20000)},
                 {"properize", suite_csv("lemma.properize", 2, 20000)},
                 {"moments_sampled", suite_csv("moments.sampled", 3, 20000)},
                 {"tail",
                  [](std::size_t workers, const fs::path& file) {
                      ConcentrationOptions o;
                      o.N = 20000;
                      o.iso_budget = 5000;
                      o.seed = 20;
                      o.workers = workers;
                      write_tail_csv(run_concentration(OrliczBall::cube(16, 0.5), o).curve, file.string());
                  }},
                 {"sample_rejection",
                  [](std::size_t workers, const fs::path& file) {
                      SamplerOptions so;
                      so.workers = workers;
                      so.full = true;
                      write_batch_csv(sample_rejection(OrliczBall::lp(3, 1.5), 5000, 20, so), file.string());
                  }},
                 {"sample_hit_and_run",
                  [](std::size_t workers, const fs::path& file) {
                      SamplerOptions so;
                      so.workers = workers;
                      write_batch_csv(sample_hit_and_run(OrliczBall::lp(8, 1.0), 5000, 20, {}, so), file.string());
                  }},
                 {"sample_lp",
                  [](std::size_t workers, const fs::path& file) {
                      SamplerOptions so;
                      so.workers = workers;
                      RadialDensity m;
                      m.kind = RadialDensity::Kind::exp;
                      write_batch_csv(sample_lp(4, m, 5000, 20, so), file.string());
                  }},
             });
         }},
    };
}

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i + 1 < argc; i += 2) {
        if (!std::strcmp(argv[i], "--workers")) g_workers = std::strtoul(argv[i + 1], nullptr, 10);
        else if (!std::strcmp(argv[i], "--only")) only = std::atoi(argv[i + 1]);
    }
    if (g_workers == 0) g_workers = 1;

    int failed = 0;
    for (const auto& c : criteria()) {
        if (only && c.id != only) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.ok = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = c.limit_s == 0 || secs < c.limit_s;
        const bool pass = o.ok && in_time;
        if (!pass) ++failed;
        char limit[32] = "";
        if (c.limit_s > 0) std::snprintf(limit, sizeof limit, " < %.0f s", c.limit_s);
        std::printf("%s  %2d  %-52s %7.1f s%s  %s\n", pass ? "PASS" : "FAIL", c.id, c.name, secs, limit,
                    o.detail.c_str());
        std::fflush(stdout);
    }
    return failed ? 1 : 0;
}
