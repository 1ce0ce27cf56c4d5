#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "bilvar/averaging.hpp"
#include "bilvar/dyadic.hpp"
#include "bilvar/field.hpp"

namespace bilvar {

/// E_j f: mean over each level-j cube, on the level-j hull of f's box.
/// Level 0 is the identity; negative levels are rejected.
Field cond_expect(const Field& f, int j);

/// d_j f = E_{j-1} f - E_j f, j >= 1.
Field mart_diff(const Field& f, int j);

/// ceil(log2(longest side)) + 1: above this level E_j acts as a global mean.
int top_level(const Box& box);

/// Box aligned at `level` that contains `box` grown by `margin` cells.
Box working_box(const Box& box, std::int64_t margin, int level);

class NotMeasurable : public std::invalid_argument {
public:
    NotMeasurable(const DyadicCube& cube, const std::string& what);
    const DyadicCube& cube() const { return cube_; }

private:
    DyadicCube cube_;
};

/// Per-cube values of an (n-1)-measurable field; throws NotMeasurable naming
/// the first cube on which the samples differ.
CubeGrid measurable_values(const Field& h, int n);

/// h*(x) = max |h| over the cubes of 3Q, Q the level-(n-1) cube containing
/// x; zero outside the field. The result covers one extra cube per side.
Field star_maximal(const Field& h, int n);

/// max((h1* |h2|)*, (|h1| h2*)*).
Field bilinear_maximal(const Field& h1, const Field& h2, int n);

struct DominationReport {
    std::size_t points = 0;
    std::size_t violations = 0;
    /// max over x of |A| - [h1,h2]^+, may be negative.
    double max_excess = 0.0;
    Coord worst{0, 0, 0};
    double worst_average = 0.0;
    double worst_maximal = 0.0;
};

/// Compares |A_{2^k}(h1, h2)(x)| (lattice units) with [h1, h2]^+(x) at every
/// grid point where either side can be nonzero. Requires a normalized body
/// and 0 <= k < n; rounding slack is 1e-12 relative to max|h1| max|h2|.
DominationReport domination_check(const ConvexBody& body, const Field& h1, const Field& h2, int n, int k);

/// Sum over k with 2^k <= side(Q) of the integral over Q of
/// |E_{k+1-n} b - E_{k-n} b|^2.
double carleson_tent_mass(const Field& b, const DyadicCube& q, int n);

struct CarlesonReport {
    int n = 0;
    double bmo = 0.0;
    /// sup over scanned cubes of tent mass / (|Q| ||b||_BMO^2)
    double sup_ratio = 0.0;
    DyadicCube worst;
};

/// Scans every dyadic cube up to one level above the support's covering
/// level (cubes further out carry no mass).
CarlesonReport carleson_sweep(const Field& b, int n);

struct WeightedSumOptions {
    double l = 1.5;
    double epsilon = 1.0;
    /// x is restricted to the support grown by window * 2^k cells.
    double window = 32.0;
};

/// sum_k integral (zeta_k * |f|^l)^{2/l} (zeta_k * |E_{k+1-n} b - E_{k-n} b|^l)^{2/l}
/// with zeta(z) = (1 + |z|)^{-d-epsilon}, zeta_k(z) = 2^{-kd} zeta(2^{-k} z).
/// Lattice units (mesh 1 required). Levels run from k = n (below it the
/// difference vanishes) to n plus two levels above b's covering level; x is
/// sampled with stride max(1, 2^{k-2}).
double carleson_weighted_sum(const Field& f, const Field& b, int n, const WeightedSumOptions& opt = {});

struct ProductVariationReport {
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;
};

/// ||V_q(E_j f1 E_j f2 : j)||_2 against min(||f1||_2 ||f2||_inf, ||f1||_inf ||f2||_2),
/// over levels 0..top with the limit 0 appended; 0/0 reports ratio 0.
ProductVariationReport martingale_product_variation_check(const Field& f1, const Field& f2, double q);

struct YoungReport {
    double lhs = 0.0;          // ||sigma * a||_2
    double young_rhs = 0.0;    // ||sigma||_1 ||a||_2
    bool holds = true;
    /// sum_k (sigma * a)_k^2 against w sum a^2 and w^2 sum a^2, w = ||sigma||_1.
    double squared_lhs = 0.0;
    double w_bound = 0.0;
    double w2_bound = 0.0;
};

/// Full discrete convolution of two finite sequences.
std::vector<double> convolve(std::span<const double> a, std::span<const double> b);

YoungReport young_convolution_check(std::span<const double> a, std::span<const double> sigma);

}  // namespace bilvar
