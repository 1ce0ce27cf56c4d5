#pragma once

#include <span>
#include <vector>

namespace bilvar {

/// Fraction of the ball of radius alpha in R^{2d} (d = 1, 2) with |y1| > 1,
/// in closed form.
double outside_fraction_closed(int d, double alpha);

/// The same fraction through the generic quadrature used for the averages.
double outside_fraction_quadrature(int d, double alpha, std::span<const double> x);

struct GrowthRatio {
    double alpha = 0.0;
    double fraction = 0.0;    // closed form at alpha
    double quadrature = 0.0;  // cross-check at alpha
    double eps0 = 0.0;
    /// Smallest distance to the 3/4 and 1/4 thresholds over the probes in
    /// B_{eps0} and the scales alpha, alpha^2, alpha^3 of the n = 1 set.
    double probe_margin = 0.0;
};

/// Smallest alpha on the lattice 1 + 0.01 k (alpha <= 1000) whose outside
/// fraction exceeds 4/5, and an eps0 (halved from 1) at which the n = 1
/// averages clear both thresholds by 0.02 at every probe. The first scale
/// is where a shift of x loses the most mass. Throws if none.
GrowthRatio find_growth_ratio(int d);

/// Probe points in B_{eps0}: 9 evenly spaced points in [-0.95, 0.95] eps0 for
/// d = 1, a 3 x 3 grid of spacing 0.7 eps0 for d = 2.
std::vector<std::vector<double>> probe_points(int d, double eps0);

/// E_n = union over i = 0..n of {alpha^{2i} < |y| <= alpha^{2i+1}},
/// F_n = {|y| <= alpha^{2n+2}} in R^d, with G the unit ball of R^{2d}.
struct CounterexampleInstance {
    int d = 1;
    double alpha = 0.0;
    int n = 0;
    double eps0 = 0.0;

    double annulus_inner(int i) const;
    double annulus_outer(int i) const;
    double f_radius() const;
};

CounterexampleInstance make_counterexample(int d, int n);

/// A_{alpha^i}(1_{E_n}, 1_{F_n})(x), exact inner integral and closed form
/// (d = 1) or composite Gauss-Legendre (d = 2) outer integral.
double counterexample_average(const CounterexampleInstance& inst, int i, std::span<const double> x);

struct AlternationRow {
    int n = 0;
    int i = 0;
    double scale = 0.0;
    double average = 0.0;
    double threshold = 0.0;  // 3/4 for odd i (average above), 1/4 for even (below)
    bool pass = false;
};

/// Every scale i = 1..2n+1 at every probe point.
std::vector<AlternationRow> alternation_table(const CounterexampleInstance& inst);

struct CounterexampleVariation {
    double value = 0.0;          // V_q over t_i = alpha^i, i = 1..2n+1, at x = 0
    double derived_bound = 0.0;  // (n 2^{1-q})^{1/q}
    double stated_bound = 0.0;   // 2^{1-q} n
    bool meets_derived = true;
};

CounterexampleVariation counterexample_variation(const CounterexampleInstance& inst, double q);

}  // namespace bilvar
