#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "bilvar/convex_body.hpp"
#include "bilvar/field.hpp"

namespace bilvar {

/// Raised when G_t contains no quadrature or lattice point.
class DegenerateScale : public std::runtime_error {
public:
    explicit DegenerateScale(double t);
    double scale() const { return t_; }

private:
    double t_;
};

enum class AvgMode {
    /// t is a physical scale; the integral is sampled on (mesh Z)^{2d} and
    /// divided by the sampled mass of G_t.
    continuum_quadrature,
    /// t is in lattice units; counting measure on Z^{2d}.
    lattice_counting,
};

struct AvgRequest {
    const ConvexBody& body;
    double t;
    const Field& f1;
    const Field& f2;
    AvgMode mode = AvgMode::lattice_counting;
};

/// Scale in cell units at which G is enumerated. Self-normalization makes
/// the continuum mode at scale t with mesh h equal to the lattice mode at
/// scale t / h.
double lattice_scale(AvgMode mode, double t, double mesh);

/// Strictly increasing positive scales; anchors are the indices with t = 2^k.
class TimeGrid {
public:
    TimeGrid() = default;
    explicit TimeGrid(std::vector<double> times);

    /// 2^{k + j / per_octave} for k in [k_min, k_max), j in [0, per_octave),
    /// followed by 2^{k_max}. Anchors are exact powers of two.
    static TimeGrid geometric(int k_min, int k_max, int per_octave);

    const std::vector<double>& times() const { return times_; }
    const std::vector<std::size_t>& anchors() const { return anchors_; }
    std::size_t size() const { return times_.size(); }
    bool empty() const { return times_.empty(); }
    /// Exponent k of the anchor at times()[i]; requires i to be an anchor.
    int anchor_exponent(std::size_t i) const;

    /// True when the first and last times are anchors and every power of
    /// two between them is present.
    bool dyadically_complete() const;

private:
    std::vector<double> times_;
    std::vector<std::size_t> anchors_;
};

/// One maximal line segment of a lattice body: all points whose first 2d - 1
/// coordinates equal `prefix`, with last coordinate in [lo, hi].
struct Run {
    LatticePoint prefix{0, 0, 0, 0};
    std::int64_t lo = 0;
    std::int64_t hi = 0;
};

/// G_s ∩ Z^{2d} as runs along the last coordinate.
struct Stencil {
    int d = 1;
    double scale = 0.0;
    std::size_t count = 0;
    std::vector<Run> runs;
};

Stencil make_stencil(const ConvexBody& body, double lattice_scale);

/// Holds f1 and f2 on a common box with prefix sums of f2 along the last
/// axis, so that each run costs O(1).
class PairKernel {
public:
    PairKernel(const Field& f1, const Field& f2);

    /// Unnormalized sum over the stencil at grid point x.
    double sum(const Stencil& stencil, const Coord& x) const;
    /// sum / count.
    double average(const Stencil& stencil, const Coord& x) const;

    const Box& box() const { return box_; }

private:
    double f1_at(const Coord& c) const;
    double f2_range(std::int64_t row, std::int64_t lo, std::int64_t hi) const;

    Box box_;
    Field f1_;
    std::vector<double> prefix_;  // per row, extent[last] + 1 entries
};

/// Direct evaluation, summing f1(x+y1) f2(x+y2) over G_t in lexicographic
/// order of the lattice points.
double avg_at(const AvgRequest& req, const Coord& x);

/// Averages at every time of the grid, accumulating shell contributions
/// from one scale to the next.
std::vector<double> avg_sweep(const ConvexBody& body, const TimeGrid& grid, const Field& f1, const Field& f2,
                              const Coord& x, AvgMode mode = AvgMode::lattice_counting);

/// Run-and-prefix-sum evaluation for d = 1, lattice mode.
double fast_slice_avg(const AvgRequest& req, const Coord& x);

/// Number of cells that G_t can reach from x in any axis.
std::int64_t reach_cells(const ConvexBody& body, double t, AvgMode mode, double mesh);

/// The average at every cell of `eval_box`.
Field avg_field(const AvgRequest& req, const Box& eval_box);

/// One field per time of the grid, all on `eval_box`.
std::vector<Field> avg_field_sweep(const ConvexBody& body, const TimeGrid& grid, const Field& f1, const Field& f2,
                                   const Box& eval_box, AvgMode mode = AvgMode::lattice_counting);

/// Zero-extended multilinear interpolation at a physical point.
double interpolate(const Field& f, std::span<const double> point);

/// M_{Lambda,t}(f1, f2)(x): midpoint quadrature over {|u1| < t, |u2| < t}
/// (Euclidean norms on R^d) with node spacing `spacing` (default: the field
/// mesh), fields interpolated multilinearly, normalized by the sampled
/// measure of the u-region. Lambda is 2d x 2d row-major; x is a grid point.
double dtt_avg(const std::vector<double>& lambda, double t, const Field& f1, const Field& f2, const Coord& x,
               double spacing = 0.0);

/// Inverse of a nonsingular matrix (row-major); rejects singular input.
std::vector<double> invert_matrix(const std::vector<double>& m, int n);

/// The same operator through the change of variables: the continuum average
/// over G_Gamma with Gamma = Lambda^{-1}.
double dtt_via_body(const std::vector<double>& lambda, double t, const Field& f1, const Field& f2, const Coord& x);

}  // namespace bilvar
