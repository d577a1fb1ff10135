/**
 * @file parallel.hpp
 * @brief Seed splitting and a fixed-order parallel loop.
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>

namespace orlicz {

using Engine = std::mt19937_64;

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// Independent sub-seed for stream `index` of `seed`.
std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t index);

/// Runs body(i) for i in [0, count) on up to `workers` threads. Callers write
/// into per-index slots and reduce in index order, so results never depend
/// on the worker count.
void parallel_for(std::size_t count, std::size_t workers, const std::function<void(std::size_t)>& body);

}  // namespace orlicz
