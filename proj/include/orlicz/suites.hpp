/**
 * @file suites.hpp
 * @brief Randomized verification suites shared by the command-line tool and
 *        the acceptance runner.
 *
 * A suite is a list of parts; each part draws its instances from a seed
 * derived from (seed, part name, instance index), runs them on up to
 * `workers` threads and returns one row per check in instance order.
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "orlicz/ball.hpp"
#include "orlicz/report.hpp"

namespace orlicz {

struct SuiteOptions {
    std::uint64_t seed = 1;
    std::size_t workers = 1;
    std::size_t instances = 0;  ///< 0: the part's default count
    std::size_t samples = 0;    ///< 0: the part's default sample size
    std::size_t nodes = 0;      ///< 0: the part's default quadrature nodes
    std::size_t levels = 0;     ///< 0: 3
    double tol_floor = 0.0;     ///< added to every row tolerance before judging
    std::optional<OrliczBall> ball;  ///< na parts: use this ball instead of random ones
};

/// na, theta, bm, lp, lemmas, main, moments, concentration.
const std::vector<std::string>& suite_names();
/// Parts of a suite, in run order. Throws std::invalid_argument for an unknown suite.
const std::vector<std::string>& suite_parts(const std::string& suite);

/// Throws std::invalid_argument for an unknown part.
std::vector<CheckRow> run_part(const std::string& part, const SuiteOptions& opt);
std::vector<CheckRow> run_suite(const std::string& suite, const SuiteOptions& opt);

}  // namespace orlicz
