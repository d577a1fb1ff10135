/**
 * @file ball.hpp
 * @brief Generalized Orlicz balls {x : sum f_i(|x_i|) <= 1}, their exact
 *        restrictions to slabs and positively inclined hyperplanes, and the
 *        approximation by balls with proper Young functions.
 */
#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "orlicz/young.hpp"

namespace orlicz {

class OrliczBall {
public:
    /// Throws std::invalid_argument if some function fails validation or has
    /// an infinite axis radius.
    explicit OrliczBall(std::vector<YoungFunction> young);

    static OrliczBall lp(std::size_t n, double p);
    /// [-half_width, half_width]^n.
    static OrliczBall cube(std::size_t n, double half_width = 1.0);
    static OrliczBall box(const std::vector<double>& half_widths);

    std::size_t dim() const { return young_.size(); }
    const YoungFunction& young(std::size_t i) const { return young_[i]; }
    const std::vector<YoungFunction>& young() const { return young_; }
    /// R_i = sup{x : f_i(x) <= 1}.
    double radius(std::size_t i) const { return radius_[i]; }
    const std::vector<double>& radii() const { return radius_; }

    /// sum f_i(|x_i|); +inf when some term is infinite.
    double level_sum(std::span<const double> x) const;
    bool contains(std::span<const double> x) const { return level_sum(x) <= 1.0; }
    /// Membership in the closed positive quadrant K+.
    bool quadrant_contains(std::span<const double> x) const;
    bool is_proper() const;
    /// Ball formed by the functions on the listed axes, in that order.
    OrliczBall sub_ball(const std::vector<std::size_t>& axes) const;
    std::string describe() const;

private:
    std::vector<YoungFunction> young_;
    std::vector<double> radius_;
};

/// Throws std::invalid_argument on dimension mismatch.
bool membership(const OrliczBall& K, std::span<const double> x);

struct EmptyBody {};

/// prod_i [0, widths[i]]; a zero width makes it a measure-zero set.
struct IntervalProduct {
    std::vector<double> widths;
    bool quadrant_contains(std::span<const double> y) const;
};

using RestrictedBody = std::variant<EmptyBody, OrliczBall, IntervalProduct>;

struct RestrictionSpec {
    enum class Kind { interval, hyperplane } kind = Kind::interval;
    std::size_t axis = 0;  ///< interval axis i, or hyperplane axis i in x_i = lambda x_j + c
    double xa = 0.0;
    double xb = 0.0;
    std::size_t other_axis = 1;  ///< hyperplane axis j
    double lambda = 0.0;
    double c = 0.0;
};

/// A restricted body together with the affine map from its quadrant back
/// into the original coordinates.
struct Restriction {
    RestrictedBody body;
    RestrictionSpec normalized;  ///< after the c < 0 rewrite for hyperplanes
    std::size_t source_dim = 0;

    bool is_empty() const { return std::holds_alternative<EmptyBody>(body); }
    std::size_t dim() const;
    /// Maps a point y of the restricted quadrant to original coordinates.
    std::vector<double> embed(std::span<const double> y) const;
    bool quadrant_contains(std::span<const double> y) const;
};

Restriction restrict_interval(const OrliczBall& K, std::size_t axis, double xa, double xb);
/// Encodes x_i = lambda x_j + c. Throws on lambda < 0 or i == j.
Restriction restrict_hyperplane(const OrliczBall& K, const RestrictionSpec& spec);

struct ProperizeReport {
    double eps_abs = 0.0;     ///< epsilon scaled by the quadrant volume
    double M = 0.0;           ///< largest quadrant projection volume
    double c = 0.0;           ///< inf_i f_i'(t_i), right derivative
    double delta = 0.0;       ///< ramp height of the zeros pass
    double delta_inf = 0.0;   ///< pull-back length of the infinities pass
    std::vector<bool> changed;
};

/// Ball K' contained in K, all functions proper, with quadrant volume loss
/// at most eps times the quadrant volume of K. Throws on eps <= 0.
OrliczBall properize(const OrliczBall& K, double eps, ProperizeReport* report = nullptr);

struct VolumeEstimate {
    double value = 0.0;
    double error = 0.0;
    double log_value = 0.0;
};

/// lambda(K+ at the given level) by iterated Stieltjes convolution of the
/// distribution functions x -> f_i^{-1}(v); works in any dimension.
VolumeEstimate quadrant_volume(const OrliczBall& K, double level = 1.0, std::size_t bins = 2048);

}  // namespace orlicz
