#pragma once

#include <array>
#include <stdexcept>
#include <string>

namespace bilvar {

/// Reciprocal-exponent vertices (1/p1, 1/p2) and their 1/q:
/// (1,0) -> 1, (0,1) -> 1, (1,1) -> 2, (0,1/s) -> 1/s, (1/s,0) -> 1/s.
struct InterpPoint {
    double x = 0.0;  // 1/p1
    double y = 0.0;  // 1/p2
    double s = 0.0;
    std::array<double, 5> weights{};
    std::array<int, 3> triangle{};
    double inv_q = 0.0;  // sum_k weights_k / q_k
};

class OutsideHull : public std::invalid_argument {
public:
    OutsideHull(const std::string& facet, const std::string& what) : std::invalid_argument(what), facet_(facet) {}
    const std::string& facet() const { return facet_; }

private:
    std::string facet_;
};

std::array<std::array<double, 3>, 5> interp_vertices(double s);

/// Barycentric weights on the first vertex triangle (lexicographic order,
/// degenerate triangles skipped) that contains the point. Throws OutsideHull
/// naming the violated facet (x <= 1, y <= 1, x >= 0, y >= 0, x + y >= 1/s).
InterpPoint interp_weights_reciprocal(double x, double y, double s);

/// Same with exponents p1, p2 in (1, inf).
InterpPoint interp_weights(double p1, double p2, double s);

}  // namespace bilvar
