/**
 * @file verify.hpp
 * @brief Numerical checks of the negative-association inequalities for
 *        generalized Orlicz balls: set-level four-term inequality, sampled
 *        covariances, Theta ratios and their monotonicity, the four-point
 *        section lemma, the l_p radial inequalities and moment comparison.
 *
 * Every check returns a signed margin (nonnegative when the inequality
 * holds), a tolerance and a three-valued verdict. Quadrature margins use
 * verdict_tol of the propagated error estimates; sampled margins use
 * 4 SE + 1e-12.
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "orlicz/ball.hpp"
#include "orlicz/quadrature.hpp"
#include "orlicz/samplers.hpp"
#include "orlicz/sets.hpp"

namespace orlicz {

/// Margin, tolerance and verdict of one inequality.
struct Margin {
    double margin = 0.0;
    double tol = 0.0;
    Verdict verdict = Verdict::vacuous;
    std::size_t escalations = 0;  ///< node doublings spent before the verdict
};

/// pass iff margin >= -tol.
Verdict judge(double margin, double tol);

// ---------------------------------------------------------------------------
// Four-term inequality and covariances

struct FourTermReport : Margin {
    /// mu(AxB), mu(AxB'), mu(A'xB), mu(A'xB') where ' is the complement.
    double masses[4] = {0.0, 0.0, 0.0, 0.0};
    double errors[4] = {0.0, 0.0, 0.0, 0.0};
};

/// mu(AxB')mu(A'xB) - mu(AxB)mu(A'xB') for the uniform measure on K+, by
/// quadrature (n <= 4). Negative margins beyond tol are recomputed with
/// doubled nodes, at most twice. Vacuous when A or B (or a complement)
/// carries no mass.
FourTermReport four_term_check(const OrliczBall& K, const CSet& A, const std::vector<std::size_t>& I, const CSet& B,
                               const std::vector<std::size_t>& J, const QuadratureSpec& spec = {});

/// Same margin from a sample of K+ (or K, absolute values are taken);
/// tol = 4 jackknife SE.
FourTermReport four_term_sampled(const SampleBatch& batch, const CSet& A, const std::vector<std::size_t>& I,
                                 const CSet& B, const std::vector<std::size_t>& J);

using ScalarFn = std::function<double(std::span<const double>)>;

struct CovarianceReport {
    double estimate = 0.0;
    double se = 0.0;
    double tol = 0.0;                    ///< 4 se + 1e-12 (rounding floor)
    Verdict verdict = Verdict::vacuous;  ///< pass iff estimate <= tol
};

/// Sample covariance of f(|X_I|) and g(|X_J|) with a jackknife SE (delete-one
/// for exact samplers, delete-one-block over 50 blocks for MCMC batches).
/// With absolute = false the signed coordinates are used. A constant f or g
/// gives estimate 0 and a vacuous verdict.
CovarianceReport na_covariance_test(const SampleBatch& batch, const std::vector<std::size_t>& I, const ScalarFn& f,
                                    const std::vector<std::size_t>& J, const ScalarFn& g, bool absolute = true);
CovarianceReport na_covariance_test(const SampleBatch& batch, const std::vector<std::size_t>& I, const MonotoneFn& f,
                                    const std::vector<std::size_t>& J, const MonotoneFn& g, bool absolute = true);
/// Radius-wise increasing f, g on disjoint blocks of an l_p radial sample.
CovarianceReport lp_radius_na_test(const SampleBatch& batch, const std::vector<std::size_t>& I, const RadiusFn& f,
                                   const std::vector<std::size_t>& J, const RadiusFn& g);

// ---------------------------------------------------------------------------
// Proper measures and Theta instances

/// t -> base(t)^m on [lo, hi], 0 elsewhere, with base = max(0, min_k(a_k + b_k t)).
/// An empty line list means base = 1.
struct ConcavePower {
    std::vector<std::pair<double, double>> lines;  ///< (a_k, b_k)
    double lo = 0.0;
    double hi = kInf;
    unsigned m = 1;

    double operator()(double t) const;
    /// lo, hi and the kinks of the base inside (lo, hi).
    std::vector<double> breaks() const;
    std::string describe() const;
};

/// Midpoint concavity of f^{1/m} over grid triples on its support.
bool root_concave_on_grid(const ConcavePower& f, std::size_t grid = 64);

/// Density fx(x) fy(y) on the first two coordinates of a Theta domain; in
/// dimension 1 only fx is used.
struct ProperMeasure {
    ConcavePower fx, fy;

    static ProperMeasure lebesgue();
    double density(std::span<const double> x) const;
    /// Supports inside [0, R_x] and [0, R_y] and 1/m-concave factors.
    bool proper_for(std::span<const double> domain_radii) const;
    std::string describe() const;
};

/// A pair eta1 >= eta2 >= 0 on the quadrant of a domain ball K'.
///
/// phi_pair: eta_j(x) = 1_K(x, z_j), K' = the section of K at z = z1.
/// psi_pair: eta1(x) = int 1_K(z, x) dz and eta2 the same over z outside B,
/// K' = the section of K at z = 0.
class ThetaInstance {
public:
    enum class Kind { phi, psi };

    /// Requires 0 <= z1 <= z2 and a nonempty section at z1.
    static ThetaInstance phi_pair(OrliczBall K, std::size_t z_axis, double z1, double z2);
    /// B is a c-set over z_axes; at least one axis must remain for x.
    static ThetaInstance psi_pair(OrliczBall K, std::vector<std::size_t> z_axes, CSet B);

    Kind kind() const { return kind_; }
    const OrliczBall& ball() const { return K_; }
    /// Dimension of the domain K'.
    std::size_t dim() const { return x_axes_.size(); }
    /// Ambient axis of each domain coordinate.
    const std::vector<std::size_t>& x_axes() const { return x_axes_; }
    /// Radii of the quadrant of K' along its coordinates.
    std::vector<double> domain_radii() const;

    struct EtaPair {
        double eta1 = 0.0, eta2 = 0.0;
        double error = 0.0;  ///< quadrature error bound of either value (0 for phi)
    };
    /// (eta1(x), eta2(x)) at a point of the domain quadrant.
    EtaPair eta(std::span<const double> x, const QuadratureSpec& spec = {}) const;

    /// The instance built the same way on a restriction of K along domain
    /// axes (axis indices in domain coordinates). nullopt when the
    /// restriction is empty or degenerate.
    std::optional<ThetaInstance> derive(const RestrictionSpec& r) const;

    /// Ambient-coordinate outputs (eta1 mass, eta2 mass) over a region given
    /// in domain coordinates, with density weight.
    std::pair<Output, Output> outputs(const Region& region, const ProperMeasure& mu,
                                      const std::vector<std::optional<double>>& fixed) const;
    /// Ambient domain for the given fixed domain coordinates (empty = none).
    Domain domain(const std::vector<std::optional<double>>& fixed) const;

    std::string describe() const;

private:
    ThetaInstance(Kind kind, OrliczBall K) : kind_(kind), K_(std::move(K)) {}
    Region to_ambient(const Region& r) const;

    Kind kind_;
    OrliczBall K_;
    std::vector<std::size_t> x_axes_;
    std::size_t z_axis_ = 0;
    double z1_ = 0.0, z2_ = 0.0;
    std::vector<std::size_t> z_axes_;
    CSet B_;
};

struct ThetaValue {
    double value = 0.0;
    double error = 0.0;  ///< propagated from the two integrals
    bool defined = false;
    IntegralResult num, den;
};

/// A ratio num/den is defined when den > 1e-12 + 3 * its error.
ThetaValue make_ratio(const IntegralResult& num, const IntegralResult& den);

/// theta(region) = int eta2 dmu / int eta1 dmu; region in domain coordinates.
/// Fixed domain coordinates give the sliced version theta_{m-k}(a; region),
/// with the density factors on fixed coordinates dropped (they cancel).
ThetaValue theta_ratio(const ThetaInstance& inst, const ProperMeasure& mu, const Region& region,
                       const QuadratureSpec& spec = {}, const std::vector<std::optional<double>>& fixed = {});

struct MonotoneViolation {
    std::size_t axis = 0;
    double t_lo = 0.0, t_hi = 0.0;
    double value_lo = 0.0, value_hi = 0.0;
    double tol = 0.0;
};

struct MonotonicityReport : Margin {
    std::size_t points = 0;
    std::size_t undefined = 0;
    std::size_t comparisons = 0;
    std::vector<MonotoneViolation> violations;
};

/// Evaluates theta_k(x) with the domain axes in `integrated` integrated out
/// and the others on `grid`-point lines through a random base point, one
/// line per non-integrated axis. Consecutive defined values must not
/// increase by more than their tolerance. Margin is the worst
/// (decrease + tol) - tol over compared pairs.
MonotonicityReport theta_monotonicity_check(const ThetaInstance& inst, const ProperMeasure& mu,
                                            const std::vector<std::size_t>& integrated, std::size_t grid,
                                            std::uint64_t seed, const QuadratureSpec& spec = {});

/// z -> mu(A' slice at z) / mu(slice at z) on a grid over [0, R_z), A a
/// c-set over the non-z axes of K (in order) and mu a proper measure there.
MonotonicityReport slab_ratio_check(const OrliczBall& K, std::size_t z_axis, const CSet& A, const ProperMeasure& mu,
                                    std::size_t grid, const QuadratureSpec& spec = {});

/// theta_{m-1}(y0; [xa,xb] x ...) >= theta_{m-1}(y0; [xc,xd] x ...) for
/// xa <= xc, xb <= xd; x is domain axis 0 and y domain axis 1.
Margin interval_shift_check(const ThetaInstance& inst, const ProperMeasure& mu, double y0, double xa, double xb,
                            double xc, double xd, const QuadratureSpec& spec = {});

/// y -> theta_{m-1}(y; [xa,xb] x ...) is nonincreasing on a grid over [0, R_y).
MonotonicityReport interval_raise_check(const ThetaInstance& inst, const ProperMeasure& mu, double xa, double xb,
                                        std::size_t grid, const QuadratureSpec& spec = {});

struct MainReport {
    ThetaValue theta_A, theta_K, theta_Ac;
    Margin upper;  ///< theta(A) - theta(K)
    Margin lower;  ///< theta(K) - theta(A')
    Verdict verdict = Verdict::vacuous;
};

/// theta(A) >= theta(K) >= theta(A') for a c-set A over the domain
/// coordinates. A side with an undefined ratio makes that margin vacuous.
MainReport theorem_main_check(const ThetaInstance& inst, const ProperMeasure& mu, const CSet& A,
                              const QuadratureSpec& spec = {});

// ---------------------------------------------------------------------------
// Four-point section lemma

/// exp(-sum a_i z_i - sum b_i (z_i - c_i)^2) with b_i >= 0.
struct LogConcaveWeight {
    std::vector<double> a, b, c;

    double operator()(std::span<const double> z) const;
    std::string describe() const;
};

struct FourPointReport : Margin {
    double sections[4] = {0.0, 0.0, 0.0, 0.0};  ///< nu(K_{x1,y1}), (x1,y2), (x2,y1), (x2,y2)
};

/// nu(K_{x1,y2}) nu(K_{x2,y1}) - nu(K_{x1,y1}) nu(K_{x2,y2}), sections of K+
/// over the axes other than x_axis, y_axis (in order), n in [3, 5].
FourPointReport bm_four_point_check(const OrliczBall& K, std::size_t x_axis, std::size_t y_axis, double x1, double x2,
                                    double y1, double y2, const LogConcaveWeight& nu, const QuadratureSpec& spec = {});

// ---------------------------------------------------------------------------
// l_p radial inequalities

struct LpGrid {
    std::size_t r_points = 24;
    std::size_t s_points = 16;
    std::size_t direction_nodes = 1024;  ///< per half of the quarter arc
    std::size_t radial_nodes = 2048;
};

struct LpSectionReport {
    /// Index 0..3: the f_B ratio, g_A monotonicity, the cross term of m, the q_B pair.
    Margin checks[4];
    /// Largest relative gap in the cross-term comparison; 0 up to rounding
    /// for the exponential profile.
    double cross_term_gap = 0.0;
};

/// Checks on radius-sets A over the first k coordinates and B over the
/// remaining n - k (k and n - k in {1, 2}), with relative tolerance 1e-12:
///   f_B(r1) f_B'(r2) >= f_B(r2) f_B'(r1)       for r1 >= r2,
///   g_A nonincreasing and g_A' nondecreasing,
///   m(r1^p+s1^p) m(r2^p+s2^p) <= m(r2^p+s1^p) m(r1^p+s2^p),
///   q_B(s1) q_B'(s2) <= q_B'(s1) q_B(s2)       for s1 >= s2.
/// g and q are cone-measure fractions of directions, f_B the radial
/// integral of m against q_B.
LpSectionReport lp_section_inequalities(double p, std::size_t n, std::size_t k, const RadialDensity& m,
                                        const RadiusSet& A, const RadiusSet& B, const LpGrid& grid = {});

/// Cone-measure fraction of directions theta in the quarter of the unit
/// l_p sphere of R^d (d in {1, 2}) with r theta in the set.
double cone_fraction(double p, std::size_t d, double r, const std::function<bool(std::span<const double>)>& in_set,
                     std::size_t nodes = 1024);

// ---------------------------------------------------------------------------
// Moment comparison

struct MomentSpec {
    std::vector<double> a;
    unsigned p = 2;

    /// Throws when p is odd or zero.
    void validate() const;
};

struct MomentReport : Margin {
    double lhs = 0.0;  ///< E (sum a_i X_i)^p
    double rhs = 0.0;  ///< same with independent coordinates
    std::size_t monomials = 0;
};

/// Even-moment expansion with quadrant integrals (n <= 3).
MomentReport moment_compare(const OrliczBall& K, const MomentSpec& spec, const QuadratureSpec& q = {});
/// From a sample of the full ball and a column-resampled copy; tol = 4 SE.
MomentReport moment_compare_sampled(const SampleBatch& full_batch, const MomentSpec& spec, std::uint64_t seed);

}  // namespace orlicz
