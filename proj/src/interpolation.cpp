#include "bilvar/interpolation.hpp"

#include <algorithm>
#include <cmath>

namespace bilvar {

namespace {
constexpr double kEdge = 1e-13;
}

std::array<std::array<double, 3>, 5> interp_vertices(double s) {
    return {{{1.0, 0.0, 1.0}, {0.0, 1.0, 1.0}, {1.0, 1.0, 2.0}, {0.0, 1.0 / s, 1.0 / s}, {1.0 / s, 0.0, 1.0 / s}}};
}

InterpPoint interp_weights_reciprocal(double x, double y, double s) {
    if (!(s > 1.0)) throw std::invalid_argument("interp_weights: s must exceed 1");
    if (!std::isfinite(x) || !std::isfinite(y)) throw std::invalid_argument("interp_weights: non-finite point");
    const auto facet = [&](const std::string& f) {
        throw OutsideHull(f, "point (" + std::to_string(x) + ", " + std::to_string(y) + ") violates " + f);
    };
    if (x > 1.0 + kEdge) facet("x <= 1");
    if (y > 1.0 + kEdge) facet("y <= 1");
    if (x < -kEdge) facet("x >= 0");
    if (y < -kEdge) facet("y >= 0");
    if (x + y < 1.0 / s - kEdge) facet("x + y >= 1/s");

    const auto v = interp_vertices(s);
    for (int a = 0; a < 5; ++a)
        for (int b = a + 1; b < 5; ++b)
            for (int c = b + 1; c < 5; ++c) {
                const double x1 = v[a][0], y1 = v[a][1];
                const double x2 = v[b][0], y2 = v[b][1];
                const double x3 = v[c][0], y3 = v[c][1];
                const double det = (y2 - y3) * (x1 - x3) + (x3 - x2) * (y1 - y3);
                if (std::abs(det) < 1e-14) continue;
                const double l1 = ((y2 - y3) * (x - x3) + (x3 - x2) * (y - y3)) / det;
                const double l2 = ((y3 - y1) * (x - x3) + (x1 - x3) * (y - y3)) / det;
                const double l3 = 1.0 - l1 - l2;
                if (l1 < -kEdge || l2 < -kEdge || l3 < -kEdge) continue;
                InterpPoint out;
                out.x = x;
                out.y = y;
                out.s = s;
                out.triangle = {a, b, c};
                out.weights[static_cast<std::size_t>(a)] = std::clamp(l1, 0.0, 1.0);
                out.weights[static_cast<std::size_t>(b)] = std::clamp(l2, 0.0, 1.0);
                out.weights[static_cast<std::size_t>(c)] = std::clamp(l3, 0.0, 1.0);
                for (int k = 0; k < 5; ++k) out.inv_q += out.weights[static_cast<std::size_t>(k)] * v[k][2];
                return out;
            }
    throw OutsideHull("none", "no vertex triangle contains the point");
}

InterpPoint interp_weights(double p1, double p2, double s) {
    if (!(p1 > 1.0) || !(p2 > 1.0) || !std::isfinite(p1) || !std::isfinite(p2))
        throw std::invalid_argument("interp_weights: exponents must lie in (1, inf)");
    return interp_weights_reciprocal(1.0 / p1, 1.0 / p2, s);
}

}  // namespace bilvar
