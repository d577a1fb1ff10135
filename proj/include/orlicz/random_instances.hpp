/**
 * @file random_instances.hpp
 * @brief Seeded generators for randomized suites: Young functions and balls,
 *        c-sets, proper measures, log-concave weights and test functions.
 */
#pragma once

#include <cstddef>
#include <span>

#include "orlicz/ball.hpp"
#include "orlicz/parallel.hpp"
#include "orlicz/samplers.hpp"
#include "orlicz/sets.hpp"
#include "orlicz/verify.hpp"

namespace orlicz {

/// Relative weights of the Young-function families drawn by random_young.
struct YoungMix {
    double power = 1.0;   ///< (x / s)^p, p in [1, 4]
    double linear = 1.0;  ///< convex piecewise linear, possibly flat at 0
    double cube = 0.3;    ///< 0 up to a width, +inf after
    double capped = 0.5;  ///< power capped by +inf before or after the radius
    double flat = 0.5;    ///< ((x - z)_+ / s)^p
};

YoungFunction random_young(Engine& rng, const YoungMix& mix = {});
OrliczBall random_ball(std::size_t n, Engine& rng, const YoungMix& mix = {});

/// 1 to 4 corners uniform in the box prod [0, box_i].
CSet random_cset_in(std::span<const double> box, Engine& rng, std::size_t max_corners = 4);

/// Factor supported in [lo, hi] subset of [0, R] with m in {1, 2, 3}.
ConcavePower random_concave_power(double R, Engine& rng);
/// Proper measure for a domain with the given radii (dimension >= 1).
ProperMeasure random_proper_measure(std::span<const double> radii, Engine& rng);

LogConcaveWeight random_log_concave(std::size_t d, Engine& rng);

ScalarMap random_scalar_map(Engine& rng);
MonotoneFn random_monotone_fn(std::size_t d, std::span<const double> box, Engine& rng);
RadiusFn random_radius_fn(std::size_t d, Engine& rng);
/// Sublevel set of a random homogeneous radius-wise increasing function whose
/// boundary crosses the radial range [0, extent].
RadiusSet random_radius_set(std::size_t d, double extent, Engine& rng);

}  // namespace orlicz
