// Small seeded generators for property tests.
#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "orlicz/ball.hpp"
#include "orlicz/parallel.hpp"
#include "orlicz/random_instances.hpp"

namespace gen {

using orlicz::Engine;

inline double uniform(Engine& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline std::size_t index(Engine& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

/// Point in prod [0, box_i * stretch].
inline std::vector<double> point_in(const std::vector<double>& box, Engine& rng, double stretch = 1.0) {
    std::vector<double> x(box.size());
    for (std::size_t i = 0; i < box.size(); ++i) x[i] = uniform(rng, 0.0, box[i] * stretch);
    return x;
}

/// Runs prop(rng, case) for `cases` independently seeded cases.
template <class Prop>
void for_cases(std::uint64_t seed, std::size_t cases, Prop prop) {
    for (std::size_t c = 0; c < cases; ++c) {
        Engine rng(orlicz::sub_seed(seed, c));
        prop(rng, c);
    }
}

}  // namespace gen
