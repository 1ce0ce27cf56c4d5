#pragma once

#include <string>
#include <vector>

#include "bilvar/dyadic.hpp"
#include "bilvar/field.hpp"

namespace bilvar {

struct BadPiece {
    DyadicCube cube;
    Field piece;  // on the cube's box
};

/// Stopping-time decomposition f = g + sum_j b_j at height alpha^{p/p_i}: a
/// cube Q is selected when mean_Q |f|^{p_i} > alpha^p and no ancestor was.
struct CZOutput {
    Field f;          // input, on the aligned working box
    Field good;       // g, same box
    Field bad_total;  // sum_j b_j, same box
    std::vector<BadPiece> bad;
    double p_i = 1.0;
    double alpha = 1.0;
    double p = 1.0;
    int top_level = 0;
    /// The descent could not find a top level below threshold.
    bool flagged = false;
};

/// Rejects alpha <= 0, p_i outside [1, inf), p <= 0 and the zero field.
CZOutput cz_decompose(const Field& f, double p_i, double alpha, double p);

struct CZProperty {
    std::string name;
    double measured = 0.0;
    double bound = 0.0;
    bool ok = true;
    double margin() const { return bound - measured; }
};

struct CZCertificate {
    /// (i), (ii), (iii), (iv), (v), (vi), (vii), (viii a) ||g||_p, (viii b) ||g||_inf,
    /// then maximality and agreement of g with f off the cubes.
    std::vector<CZProperty> properties;
    bool ok() const;
};

/// Checks every property with the explicit constants 2^{d+p_i} for (v), 1 for
/// (vi), 2^{(d+p_i)/p_i} for (vii), 1 and 2^{d/p_i} for (viii); relative
/// slack 1e-12.
CZCertificate cz_certify(const CZOutput& out);

}  // namespace bilvar
