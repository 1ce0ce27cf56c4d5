#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "bilvar/averaging.hpp"

namespace bilvar {

/// |x|^q, through exp(q log|x|) when q > 8.
double vq_power(double x, double q);

struct VariationOutcome {
    double q = 2.0;
    double value = 0.0;
    /// Increasing indices of a subsequence attaining the value.
    std::vector<std::size_t> witness;
};

/// Exact q-variation of a finite sequence: the max over increasing index
/// subsequences of (sum |a_{i_{k+1}} - a_{i_k}|^q)^{1/q}, by an O(m^2) DP.
/// Ties go to the earlier predecessor and the earlier endpoint. q in (1, 16].
VariationOutcome vq_exact(std::span<const double> a, double q);

/// The same maximum by enumerating every subsequence; m <= 24.
double vq_exhaustive(std::span<const double> a, double q);

/// (sum over consecutive witness pairs of |difference|^q), summed left to right.
double variation_sum(std::span<const double> a, std::span<const std::size_t> witness, double q);

struct LongVariation {
    double value = 0.0;
    bool no_anchors = false;
};

/// V_q restricted to the dyadic anchors of the grid.
LongVariation long_variation(std::span<const double> a, const TimeGrid& grid, double q);

/// (sum_k V_q^q over the times in (2^k, 2^{k+1}])^{1/q}.
double short_variation(std::span<const double> a, const TimeGrid& grid, double q);

/// Index k of the block (2^k, 2^{k+1}] containing t.
int short_block(double t);

struct InequalityReport {
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds = true;
};

/// V_q(a b) <= sup|a| V_q(b) + sup|b| V_q(a).
InequalityReport product_rule_check(std::span<const double> a, std::span<const double> b, double q);

/// sup|a| <= |a_{t0}| + 2 V_q(a).
InequalityReport sup_vs_variation_check(std::span<const double> a, double q, std::size_t t0);

struct SplitReport {
    double full = 0.0;
    double long_part = 0.0;
    double short_part = 0.0;
    /// The grid has every power of two between its first and last time,
    /// both of which are anchors; the bound is only claimed then.
    bool complete = false;
    bool holds = true;
};

/// V_q(full grid) <= LV_q + 2 SV_q.
SplitReport split_domination_check(std::span<const double> a, const TimeGrid& grid, double q);

}  // namespace bilvar
