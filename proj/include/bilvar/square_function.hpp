#pragma once

#include <vector>

#include "bilvar/convex_body.hpp"
#include "bilvar/field.hpp"

namespace bilvar {

/// L_k(f1, f2) = A_{2^k}(f1, f2) - E_k f1 E_k f2 (lattice units), on the
/// smallest level-k aligned box outside of which it vanishes. The body must
/// be normalized and k >= 0.
Field square_piece(const Field& f1, const Field& f2, const ConvexBody& body, int k);

/// Same, restricted to `box`.
Field square_piece_on(const Field& f1, const Field& f2, const ConvexBody& body, int k, const Box& box);

/// Box, aligned at level k_max, holding every L_k with k <= k_max.
Box square_box(const Box& support, const ConvexBody& body, int k_max);

struct SquarePieces {
    int k_min = 0;
    int k_max = 0;
    std::vector<Field> pieces;  // k_min .. k_max, all on one box
    Field aggregate;            // (sum_k L_k^2)^{1/2}
    /// max |L_{k_max + 1}|, a truncation diagnostic.
    double tail = 0.0;
};

SquarePieces square_function(const Field& f1, const Field& f2, const ConvexBody& body, int k_min, int k_max);

/// Default range: 0 up to one level above the joint support's covering level.
SquarePieces square_function(const Field& f1, const Field& f2, const ConvexBody& body);

struct TelescopeReport {
    double residual = 0.0;        // max |lhs - rhs|
    double scale = 0.0;           // max |lhs|
    double fine_boundary = 0.0;   // max |L_k(E_{l-1} f1, E_{l-1} f2)|
    double coarse_boundary = 0.0; // max |L_k(E_j f1, E_j f2)|
};

/// L_k(E_{l-1} f1, E_{l-1} f2) - L_k(E_j f1, E_j f2)
///   = sum_{n=l}^{j} [L_k(d_n f1, E_{n-1} f2) + L_k(E_n f1, d_n f2)]
/// at every point where either side can be nonzero. Requires 1 <= l <= j.
TelescopeReport paraproduct_telescope(const Field& f1, const Field& f2, const ConvexBody& body, int k, int l, int j);

struct LongDominationReport {
    std::size_t points = 0;
    std::size_t violations = 0;
    double max_excess = 0.0;
};

/// V_q(A_{2^k}(f1, f2) : k) <= 2 (sum_k L_k^2)^{1/2} + V_q(E_k f1 E_k f2 : k)
/// pointwise over k in [k_min, k_max]; needs q >= 2.
LongDominationReport long_variation_domination(const Field& f1, const Field& f2, const ConvexBody& body, int k_min,
                                               int k_max, double q);

}  // namespace bilvar
