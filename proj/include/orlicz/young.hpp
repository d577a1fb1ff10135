/**
 * @file young.hpp
 * @brief Young functions: convex nondecreasing maps R+ -> R+ u {+inf} with f(0) = 0.
 */
#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace orlicz {

/// +inf is carried as the IEEE-754 infinity, which already has the required
/// arithmetic (inf + a = inf, inf > any finite value).
inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// coef * (slope * x + offset)^p, with the base clamped at 0.
struct PowerTerm {
    double coef = 0.0;
    double slope = 1.0;
    double offset = 0.0;
    double p = 1.0;

    double eval(double x) const;
    double derivative(double x) const;
};

/// One piece: value(x) = base + slope * (x - x0) + sum of power terms.
struct Segment {
    double x0 = 0.0;
    double base = 0.0;
    double slope = 0.0;
    std::vector<PowerTerm> terms;

    double eval(double x) const;
    double derivative(double x) const;
    bool is_linear() const { return terms.empty(); }
};

enum class Interp { linear, power };

class YoungFunction {
public:
    YoungFunction() = default;

    /// (x / scale)^p.
    static YoungFunction power(double p, double scale = 1.0);
    /// 0 on [0, width], +inf beyond.
    static YoungFunction cube(double width);
    /// Breakpoints (x, value); value may be kInf. Between finite points the
    /// rule is `interp` (power uses exponent `p`). A segment running into an
    /// infinite point continues the previous rule (flat if there is none).
    /// Past the last finite point the last rule is extended.
    static YoungFunction from_points(const std::vector<std::pair<double, double>>& points,
                                     Interp interp = Interp::linear, double p = 1.0);
    static YoungFunction from_segments(std::vector<Segment> segments, double cap);

    double operator()(double x) const;
    /// Right derivative; +inf at or beyond the cap.
    double right_derivative(double x) const;
    /// Left derivative for x > 0.
    double left_derivative(double x) const;
    /// sup{x >= 0 : f(x) <= v}; requires v >= 0.
    double inverse(double v) const;
    /// f = +inf for x > cap(); kInf when f is finite everywhere.
    double cap() const { return cap_; }
    /// sup{x : f(x) = 0}.
    double zero_end() const { return inverse(0.0); }
    /// Finite everywhere and positive off 0.
    bool is_proper() const;

    /// t -> f(lambda * t + c) for lambda > 0, c >= 0.
    YoungFunction compose_affine(double lambda, double c) const;
    /// (f - shift) * factor.
    YoungFunction affine_value(double shift, double factor) const;
    /// Pointwise sum with breakpoint merge.
    YoungFunction plus(const YoungFunction& other) const;
    /// Same values on [0, x], +inf beyond.
    YoungFunction capped(double x) const;
    /// Keeps f on [0, x) and continues with a linear piece of the given
    /// start value and slope from x on; the cap is dropped.
    YoungFunction splice_linear(double x, double value, double slope) const;
    /// Replaces f on [0, s] by the ramp t * value / s, keeps f after s.
    YoungFunction ramp_prefix(double s, double value) const;

    const std::vector<Segment>& segments() const { return segs_; }
    /// Finite breakpoints (segment starts) plus the cap if finite.
    std::vector<double> breakpoints() const;
    std::string describe() const;

private:
    std::size_t locate(double x) const;

    std::vector<Segment> segs_;
    double cap_ = kInf;
};

struct ValidationIssue {
    std::string invariant;
    std::string message;
    std::optional<std::pair<double, double>> pair;  ///< (a, b) of the failing midpoint triple
};

struct ValidationReport {
    bool ok = true;
    std::vector<ValidationIssue> issues;
};

/// Checks f(0) = 0, nonnegativity, monotonicity, midpoint convexity on grid
/// triples, and nontriviality (positive somewhere, finite somewhere off 0).
ValidationReport validate_young(const YoungFunction& f, std::size_t grid = 96);

/// f((a+b)/2) <= (f(a)+f(b))/2 with a relative slack of 1e-12.
bool midpoint_convex(const YoungFunction& f, double a, double b);

inline double young_eval(const YoungFunction& f, double x) { return f(x); }

}  // namespace orlicz
