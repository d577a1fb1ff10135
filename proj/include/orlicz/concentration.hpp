/**
 * @file concentration.hpp
 * @brief Isotropic rescaling of Orlicz balls, the Shao maximal bound and its
 *        specialization to sum X_i^2 / n, and empirical tail curves.
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "orlicz/ball.hpp"
#include "orlicz/quadrature.hpp"
#include "orlicz/samplers.hpp"

namespace orlicz {

struct IsotropicReport {
    std::vector<double> scale;           ///< diagonal factor applied to axis i
    double volume_scale = 1.0;           ///< common factor applied afterwards
    double L_K_squared = 0.0;            ///< common second moment after rescaling
    std::vector<double> second_moments;  ///< per-axis E X_i^2 of the result, fresh sample
    std::vector<double> fourth_moments;  ///< per-axis E X_i^4 of the result, same sample
    double residual = 0.0;               ///< (max - min) / mean of second_moments
    double volume = 0.0;                 ///< volume of the rescaled ball
    double volume_error = 0.0;
};

struct IsotropicBall {
    OrliczBall ball;
    IsotropicReport report;
};

/// Uniform sampler used for concentration runs: rejection for n <= 6,
/// coordinate hit-and-run otherwise.
SampleBatch sample_uniform(const OrliczBall& K, std::size_t N, std::uint64_t seed, std::size_t workers = 1,
                           std::size_t thinning = 2);

/// Diagonal rescaling equalizing the estimated E X_i^2, then a global
/// rescaling to unit volume. `budget` points are drawn twice: once to fit
/// and once (with a derived seed) to report residual moments.
IsotropicBall isotropize(const OrliczBall& K, std::size_t budget, std::uint64_t seed, std::size_t workers = 1);

struct ShaoParams {
    double x = 1.0;
    double a = 1.0;
    double alpha = 0.5;
    double B_n = 1.0;
    double tail = 0.0;  ///< P(max_k |X_k| > a)
};

/// 2 tail + 2/(1-alpha) exp(-x^2 alpha / (2(a x + B_n)) (1 + 2/3 ln(1 + a x / B_n))).
/// Throws outside x > 0, a > 0, 0 < alpha < 1, B_n >= 0, tail in [0, 1].
double shao_maximal_bound(const ShaoParams& p);

/// A probability bound at or above 1 carries no information.
inline bool bound_vacuous(double bound) { return bound >= 1.0; }

/// Default a = (n^2 t^2)^{1/3}.
double default_a(std::size_t n, double t);

/// 2 tail + 4 exp(-n t^2 / (4(a t + 5 L^4)) (1 + 2/3 ln(1 + a t / (5 L^4)))) with
/// L^2 = L_K_squared; tail = P(max_k |X_k^2 - L^2| > a).
double corollary17_bound(double L_K_squared, double t, double a, std::size_t n, double tail);

struct TailPoint {
    double t = 0.0;
    double empirical = 0.0;  ///< fraction with |sum x_i^2 / n - L^2| > t
    double ci_lo = 0.0, ci_hi = 0.0;
    double a = 0.0;
    double tail_term = 0.0;  ///< fraction with max_k |x_k^2 - L^2| > a
    double bound = 0.0;
    bool a_below_LK2 = false;  ///< the regime where the bound is not informative by construction
    bool dominated = true;     ///< ci_hi <= bound
};

/// Wilson score interval for k successes out of N at z = 1.96.
std::pair<double, double> wilson_interval(std::size_t k, std::size_t N, double z = 1.96);

/// Tail curve of |sum X_i^2 / n - L^2| over the grid, with bounds.
std::vector<TailPoint> empirical_tail(const SampleBatch& batch, double L_K_squared, const std::vector<double>& t_grid);

struct ConcentrationOptions {
    std::size_t N = 100000;
    std::size_t iso_budget = 20000;
    std::uint64_t seed = 1;
    std::size_t workers = 1;
    std::vector<double> t_grid;  ///< empty: 0.05 k for k = 0..20
};

struct ConcentrationReport {
    IsotropicReport iso;
    std::vector<TailPoint> curve;
    double kurtosis_max = 0.0;  ///< max_i E X_i^4 / (E X_i^2)^2
    Verdict verdict = Verdict::pass;  ///< fail iff some grid point is not dominated
};

ConcentrationReport run_concentration(const OrliczBall& K, const ConcentrationOptions& opt);

/// t,empirical,ci_lo,ci_hi,bound,a,tail_term,a_below_LK2,dominated
void write_tail_csv(const std::vector<TailPoint>& curve, const std::string& path);

}  // namespace orlicz
