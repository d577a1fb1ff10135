/**
 * @file quadrature.hpp
 * @brief Deterministic tensor quadrature over Orlicz-ball quadrants and their
 *        sections, and ratio-of-integrals comparisons on the line.
 *
 * The default rule integrates the innermost free axis exactly against the
 * ball boundary and every region boundary: for fixed outer coordinates the
 * admissible set along that axis is one interval, which is cut into the
 * uniform grid cells it meets. Outer axes use midpoints, with cell edges
 * aligned to c-set corners and boundary cells split 4x per axis.
 */
#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "orlicz/ball.hpp"
#include "orlicz/sets.hpp"

namespace orlicz {

enum class Rule { midpoint_tensor, boundary_clipped };

struct QuadratureSpec {
    std::size_t nodes = 256;   ///< cells per axis at the finest level, >= 8
    std::size_t levels = 3;    ///< grids nodes, nodes/2, ... (at least 2)
    Rule rule = Rule::boundary_clipped;
    std::size_t workers = 1;
};

struct IntegralResult {
    double value = 0.0;
    double error = 0.0;           ///< |I_fine - I_coarse|
    std::size_t nodes_used = 0;   ///< integrand evaluations at the finest level
    std::vector<double> by_level; ///< finest first
};

/// Three-valued outcome used by every inequality check.
enum class Verdict { pass, fail, vacuous };
std::string to_string(Verdict v);

/// One factor of an intersection region, in original coordinates.
struct RegionFactor {
    enum class Kind { cset, cset_complement, interval, level };
    Kind kind = Kind::cset;
    CSet set;                    ///< cset kinds: set over `axes`
    std::vector<std::size_t> axes;
    double lo = 0.0;             ///< interval on axes[0]
    double hi = kInf;
    double level = 1.0;          ///< level kind: sum_{axes} f_i(x_i) <= level

    static RegionFactor in(CSet set, std::vector<std::size_t> axes);
    static RegionFactor out(CSet set, std::vector<std::size_t> axes);
    static RegionFactor interval(std::size_t axis, double lo, double hi);
    static RegionFactor sublevel(std::vector<std::size_t> axes, double level);
};

/// Intersection of factors; no factors means everything.
struct Region {
    std::vector<RegionFactor> factors;

    bool contains(const OrliczBall& K, std::span<const double> x) const;
    std::string describe() const;
};

using Weight = std::function<double(std::span<const double>)>;

/// One requested integral: weight (empty = 1) times the region indicator.
struct Output {
    Region region;
    Weight weight;
    /// Points where the weight jumps, per original axis (may be empty).
    std::vector<std::vector<double>> weight_breaks;
};

/// Integration domain: the quadrant of K at `level` with some coordinates fixed.
struct Domain {
    std::vector<std::optional<double>> fixed;  ///< empty = nothing fixed
    double level = 1.0;
};

/// Integrals of all outputs over {x in K+ at level : fixed coordinates hold},
/// computed in one pass. Throws if more than 3 coordinates are free with
/// n > 4, or on dimension mismatches.
std::vector<IntegralResult> integrate_outputs(const OrliczBall& K, const Domain& dom,
                                              const std::vector<Output>& outputs,
                                              const QuadratureSpec& spec = {});

/// Integral of weight over K+ intersected with region. n <= 4.
IntegralResult integrate_quadrant(const OrliczBall& K, const Weight& weight, const Region& region,
                                  const QuadratureSpec& spec = {});

/// Integral over the section of K+ where the given coordinates are fixed.
/// At most 3 free coordinates. Empty sections give 0.
IntegralResult section_measure(const OrliczBall& K, const std::vector<std::optional<double>>& fixed,
                               const Weight& weight, const QuadratureSpec& spec = {});

/// Tolerance for inequality verdicts: 3 * sum of error estimates + 1e-12.
double verdict_tol(std::initializer_list<double> errors);

/// Composite midpoint integral of fn over [a, b] at the spec's levels,
/// with the listed breakpoints used as cell edges.
IntegralResult integrate_1d(const std::function<double(double)>& fn, double a, double b,
                            const QuadratureSpec& spec = {}, const std::vector<double>& breaks = {});

struct RatioReport {
    double lhs = 0.0, rhs = 0.0;
    double tol = 0.0;
    bool lhs_defined = false, rhs_defined = false;
    bool fact_consistent = true;  ///< the three-fraction equivalence held
    Verdict verdict = Verdict::vacuous;
};

/// Compares int_a^b f dmu / int_a^b g dmu against int_c^d f dmu / int_c^d g dmu.
/// mu is given by its density; requires a < b <= d and a <= c < d.
RatioReport ratio_compare(const std::function<double(double)>& f, const std::function<double(double)>& g,
                          const std::function<double(double)>& mu, double a, double b, double c, double d,
                          const QuadratureSpec& spec = {});

/// True when the three statements a/c >= b/d, a/c >= (a+b)/(c+d) and
/// (a+b)/(c+d) >= b/d agree, each decided with slack tol. a,b >= 0, c,d > 0.
bool fraction_equivalence(double a, double b, double c, double d, double tol);

struct PairingReport {
    double lhs = 0.0, rhs = 0.0, tol = 0.0;
    Verdict verdict = Verdict::pass;
};

/// int p f * int q g <= int p g * int q f over [lo, hi] with density mu.
PairingReport pairing_check(const std::function<double(double)>& p, const std::function<double(double)>& q,
                            const std::function<double(double)>& f, const std::function<double(double)>& g,
                            const std::function<double(double)>& mu, double lo, double hi,
                            const QuadratureSpec& spec = {});

}  // namespace orlicz
