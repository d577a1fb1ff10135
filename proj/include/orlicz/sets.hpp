/**
 * @file sets.hpp
 * @brief Down-closed sets of the positive quadrant (corner-box c-sets and
 *        stair sets) and the coordinate-wise / radius-wise increasing test
 *        functions used by the covariance checks.
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace orlicz {

/// Union of boxes prod_i [0, c_i] over the corner list. No corners = empty set.
class CSet {
public:
    explicit CSet(std::size_t dim = 0) : dim_(dim) {}
    CSet(std::size_t dim, const std::vector<std::vector<double>>& corners);

    std::size_t dim() const { return dim_; }
    std::size_t size() const { return dim_ == 0 ? 0 : flat_.size() / dim_; }
    bool empty() const { return flat_.empty(); }
    std::span<const double> corner(std::size_t j) const { return {flat_.data() + j * dim_, dim_}; }
    std::vector<std::vector<double>> corners() const;

    /// x >= 0 and x <= some corner coordinate-wise.
    bool contains(std::span<const double> x) const;
    /// sup of x_axis over the set with the other coordinates of x held fixed;
    /// empty when no box contains those coordinates.
    std::optional<double> slice_sup(std::span<const double> x, std::size_t axis) const;
    /// Intersection with prod [0, bounds_i].
    CSet clipped(std::span<const double> bounds) const;
    std::string describe() const;

private:
    std::size_t dim_;
    std::vector<double> flat_;
};

bool cset_membership(const CSet& A, std::span<const double> x);

/// Reproducible corners uniform in prod [0, box_i]; j >= 1.
CSet random_cset(std::size_t n, std::size_t j, std::span<const double> box, std::uint64_t seed);

/// Two-dimensional stair set: column k covers xs[k] <= x < xs[k+1] (the last
/// one runs to infinity) and holds 0 <= y <= heights[k].
class StairSet {
public:
    StairSet(std::vector<double> xs, std::vector<double> heights);

    const std::vector<double>& xs() const { return xs_; }
    const std::vector<double>& heights() const { return heights_; }
    bool contains(double x, double y) const;
    /// Area; +inf when the last height is positive.
    double area() const;
    /// Same set as a corner-box c-set, with the unbounded last column cut at x_max.
    CSet to_cset(double x_max) const;

private:
    std::vector<double> xs_;
    std::vector<double> heights_;
};

/// A bounded down-closed subset of R+^2 given by its column profile:
/// column(x) = sup{y : (x, y) in A}, or nullopt when the column is empty.
struct DownSet2D {
    std::function<std::optional<double>(double)> column;
    double x_extent = 0.0;  ///< sup of x over A
};

DownSet2D as_downset(const CSet& A);

/// The superset stair approximation on the grid k / 2^m, with a final
/// zero-height step closing it off.
StairSet stair_approximate(const DownSet2D& A, unsigned m);
StairSet stair_approximate(const CSet& A, unsigned m);

/// Increasing scalar maps used to build compositions.
struct ScalarMap {
    enum class Kind { identity, tanh, clamp, sqrt, log1p } kind = Kind::identity;
    double param = 1.0;  ///< tanh scale or clamp level

    double operator()(double v) const;
    std::string describe() const;
};

/// Coordinate-wise increasing function on R+^k.
class MonotoneFn {
public:
    struct CSetComplement { CSet set; };
    struct Polynomial {
        std::vector<double> coef;                       ///< nonnegative
        std::vector<std::vector<unsigned>> exponents;   ///< one exponent vector per monomial
    };
    struct MaxScaled { std::vector<double> weights; };  ///< nonnegative

    using Base = std::variant<CSetComplement, Polynomial, MaxScaled>;

    MonotoneFn(Base base, std::size_t dim, ScalarMap outer = {});

    std::size_t dim() const { return dim_; }
    double operator()(std::span<const double> x) const;
    std::string describe() const;

private:
    Base base_;
    std::size_t dim_;
    ScalarMap outer_;
};

/// Radius-wise increasing function on R+^k: f(t x) >= f(x) for t > 1.
class RadiusFn {
public:
    struct AbsLinear { std::vector<double> a; };                    ///< |sum a_i x_i|
    struct HomogeneousMax { std::vector<std::vector<double>> rows; };  ///< max_k |<a_k, x>|

    using Base = std::variant<AbsLinear, HomogeneousMax>;

    RadiusFn(Base base, std::size_t dim, ScalarMap outer = {});

    std::size_t dim() const { return dim_; }
    double operator()(std::span<const double> x) const;
    std::string describe() const;

private:
    Base base_;
    std::size_t dim_;
    ScalarMap outer_;
};

inline double eval_monotone(const MonotoneFn& f, std::span<const double> x) { return f(x); }
inline double eval_monotone(const RadiusFn& f, std::span<const double> x) { return f(x); }

/// {x in R+^k : F(x) <= level} for a radius-wise increasing F; such sets are
/// star-shaped about the origin.
struct RadiusSet {
    RadiusFn fn;
    double level = 1.0;

    bool contains(std::span<const double> x) const { return fn(x) <= level; }
};

}  // namespace orlicz
