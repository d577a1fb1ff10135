/**
 * @file samplers.hpp
 * @brief Seeded samplers for Orlicz balls and l_p radial densities.
 *
 * Every sampler splits its work into a fixed number of streams, each with
 * its own sub-seed; worker threads only schedule streams, and streams are
 * concatenated in index order. Batches are therefore a function of the
 * arguments alone.
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "orlicz/ball.hpp"

namespace orlicz {

enum class SampleMethod { rejection, hit_and_run, lp_radial, lp_surface, resample };
std::string to_string(SampleMethod m);

struct SampleBatch {
    std::size_t dim = 0;
    std::vector<double> data;  ///< row-major, rows() x dim
    std::uint64_t seed = 0;
    SampleMethod method = SampleMethod::rejection;
    std::size_t burn_in = 0;
    std::size_t thinning = 1;
    std::size_t streams = 1;
    double acceptance = 1.0;    ///< rejection only
    std::vector<double> lag1;   ///< per-coordinate lag-1 autocorrelation (MCMC only)

    std::size_t rows() const { return dim == 0 ? 0 : data.size() / dim; }
    std::span<const double> row(std::size_t i) const { return {data.data() + i * dim, dim}; }
    double at(std::size_t i, std::size_t j) const { return data[i * dim + j]; }
    bool is_mcmc() const { return method == SampleMethod::hit_and_run; }
};

struct SamplerOptions {
    bool full = false;         ///< random sign flips: uniform on K rather than K+
    std::size_t workers = 1;
    std::size_t streams = 16;
};

/// I.i.d. uniform points by rejection from the bounding box. Requires n <= 10;
/// throws when a pilot run accepts less than 1e-4 of the proposals.
SampleBatch sample_rejection(const OrliczBall& K, std::size_t N, std::uint64_t seed, const SamplerOptions& opt = {});

enum class Direction { sphere, coordinate };

struct ChainOptions {
    std::size_t burn_in = 1000;
    std::size_t thinning = 1;
    /// sphere: uniform random directions with bisection for the chord ends;
    /// coordinate: one axis at a time, chord ends from the inverse Young function.
    Direction direction = Direction::sphere;
};

/// Hit-and-run chains targeting the uniform law on K+ (on K with opt.full).
SampleBatch sample_hit_and_run(const OrliczBall& K, std::size_t N, std::uint64_t seed, const ChainOptions& chain = {},
                               const SamplerOptions& opt = {});

/// Log-concave profile m of s = ||x||_p^p.
struct RadialDensity {
    enum class Kind { exp, indicator, gaussian };
    Kind kind = Kind::indicator;
    double param = 1.0;  ///< exp: rate; indicator: right end of [0, param]; gaussian: sigma
    double p = 2.0;

    double m(double s) const;
    std::string describe() const;
};

/// Density proportional to m(||x||_p^p) on R^n (on R+^n unless opt.full).
/// Throws when p < 1 or m is not normalizable.
SampleBatch sample_lp(std::size_t n, const RadialDensity& density, std::size_t N, std::uint64_t seed,
                      const SamplerOptions& opt = {});

/// Cone measure on the unit l_p sphere.
SampleBatch sample_lp_surface(std::size_t n, double p, std::size_t N, std::uint64_t seed, const SamplerOptions& opt = {});

/// Column-wise resampling with replacement; coordinates become independent
/// with the same marginals. Requires at least 2 rows.
SampleBatch independent_copies(const SampleBatch& batch, std::uint64_t seed);

struct MeanEstimate {
    double mean = 0.0;
    double se = 0.0;
};

/// Mean of fn over the rows. SE is i.i.d. for exact samplers and from 32
/// batch means for MCMC batches.
MeanEstimate estimate_mean(const SampleBatch& batch, const std::function<double(std::span<const double>)>& fn);

/// Lag-1 autocorrelation of a series.
double lag1_autocorrelation(std::span<const double> series);

/// x1..xn CSV with %.17g values.
void write_batch_csv(const SampleBatch& batch, const std::string& path);
/// JSON sidecar: seed, method, sizes and diagnostics.
void write_batch_metadata(const SampleBatch& batch, const std::string& path);

}  // namespace orlicz
