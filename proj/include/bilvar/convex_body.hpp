#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace bilvar {

/// Point of Z^{2d} (d <= 2); unused trailing components are zero.
using LatticePoint = std::array<std::int64_t, 4>;

enum class BodyKind { ball, cube, gamma, polytope };

std::string to_string(BodyKind kind);

/// Symmetric convex body G in R^{2d}, given by its gauge (Minkowski
/// functional): G = {y : gauge(y) <= 1}, G_t = {y : gauge(y) <= t}.
/// Membership is closed; boundary lattice points count as inside. Carries
/// certified radii with B(r_in) in G in B(r_out).
class ConvexBody {
public:
    /// Euclidean ball of the given radius in R^{2d}.
    static ConvexBody ball(int d, double radius = 1.0);
    /// Cube [-half_side, half_side]^{2d}.
    static ConvexBody cube(int d, double half_side = 1.0);
    /// {(y1, y2) : |(Gamma y)_1| <= 1, |(Gamma y)_2| <= 1} for a nonsingular
    /// 2d x 2d matrix Gamma (row-major), blocks measured in the Euclidean norm
    /// of R^d.
    static ConvexBody gamma(int d, std::vector<double> gamma_row_major);
    /// {y : A y <= 1} with caller-supplied radius certificates, verified by
    /// random spot checks (directions, convexity, symmetry).
    static ConvexBody polytope(int d, std::vector<std::vector<double>> rows, double r_in, double r_out,
                               std::uint64_t seed = 0x5eed);

    int d() const { return d_; }
    int ambient_dim() const { return 2 * d_; }
    BodyKind kind() const { return kind_; }
    double r_in() const { return r_in_; }
    double r_out() const { return r_out_; }
    double tau() const { return r_in_ / r_out_; }
    bool normalized() const;

    /// Minkowski functional of G; y in G_t iff gauge(y) <= t.
    double gauge(std::span<const double> y) const;
    double gauge(const LatticePoint& p) const;
    bool contains(std::span<const double> y, double t = 1.0) const;
    bool contains(const LatticePoint& p, double t) const;

    /// The dilate-by-`factor` body (radii scale with it).
    ConvexBody scaled(double factor) const;

    const std::vector<double>& gamma_matrix() const { return gamma_; }

private:
    ConvexBody() = default;
    double raw_gauge(const double* y) const;

    BodyKind kind_ = BodyKind::ball;
    int d_ = 1;
    double param_ = 1.0;   // radius or half side
    double scale_ = 1.0;   // gauge(y) = raw_gauge(y) / scale_
    double r_in_ = 1.0;
    double r_out_ = 1.0;
    std::vector<double> gamma_;               // 2d x 2d
    std::vector<std::vector<double>> rows_;   // polytope half spaces
};

/// Rescales by 1 / r_out so that B(tau) in G in B(1), tau = r_in / r_out.
ConvexBody normalize(const ConvexBody& body);

/// Relative slack applied to the closed membership test to absorb rounding
/// (e.g. |(1,1)| <= sqrt(2)).
inline constexpr double kMembershipSlack = 1e-12;

struct SpotCheckReport {
    std::size_t directions = 0;
    std::size_t inner_failures = 0;
    std::size_t outer_failures = 0;
    std::size_t convexity_failures = 0;
    std::size_t symmetry_failures = 0;
    bool ok() const { return inner_failures + outer_failures + convexity_failures + symmetry_failures == 0; }
};

/// Random checks of the radius certificates, midpoint convexity and
/// symmetry (10^4 samples each by default).
SpotCheckReport spot_check(const ConvexBody& body, std::size_t samples = 10000, std::uint64_t seed = 0x5eed);

struct LatticePointSet {
    double t = 0.0;
    int ambient_dim = 2;
    std::vector<LatticePoint> points;  // lexicographically sorted
    std::size_t count() const { return points.size(); }
};

/// Exact set G_t ∩ Z^{2d}, scanning the box [-R, R]^{2d}, R = floor(t r_out).
LatticePointSet enumerate_lattice(const ConvexBody& body, double t);

/// G_{t2} \ G_{t1} ∩ Z^{2d}. Rejects t1 >= t2.
LatticePointSet shell(const ConvexBody& body, double t1, double t2);

struct VolumeEstimate {
    double value = 0.0;
    double std_error = 0.0;
};

/// Monte Carlo estimate of |G_t Δ (v + G_t)|.
VolumeEstimate symmetric_difference_volume(const ConvexBody& body, double t, std::span<const double> offset,
                                           std::size_t samples = 200000, std::uint64_t seed = 7);

struct BoundaryCubeCount {
    std::size_t count = 0;
    /// count / 2^{(2d-1)(k-n)}
    double constant = 0.0;
};

/// Number of dyadic cubes of side 2^n in R^{2d} meeting the boundary of
/// G_{2^k}, detected by mixed membership on a sub-lattice of each cube.
BoundaryCubeCount boundary_cube_count(const ConvexBody& body, int k, int n);

}  // namespace bilvar
