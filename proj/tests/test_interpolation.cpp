#include "doctest.h"

#include <random>

#include "bilvar/interpolation.hpp"

using namespace bilvar;

TEST_CASE("midpoint of the two L1 vertices") {
    const InterpPoint p = interp_weights(2.0, 2.0, 10.0);
    CHECK(p.weights[0] == doctest::Approx(0.5));
    CHECK(p.weights[1] == doctest::Approx(0.5));
    CHECK(p.weights[2] == doctest::Approx(0.0));
    CHECK(p.weights[3] == doctest::Approx(0.0));
    CHECK(p.weights[4] == doctest::Approx(0.0));
    CHECK(p.inv_q == doctest::Approx(1.0));
}

TEST_CASE("vertex case") {
    const InterpPoint p = interp_weights_reciprocal(1.0, 1.0, 10.0);
    CHECK(p.weights[2] == doctest::Approx(1.0));
    CHECK(p.inv_q == doctest::Approx(2.0));
}

TEST_CASE("outside points name the facet") {
    const auto facet = [](double x, double y) {
        try {
            interp_weights_reciprocal(x, y, 10.0);
        } catch (const OutsideHull& e) {
            return e.facet();
        }
        return std::string();
    };
    CHECK(facet(1.2, 0.5) == "x <= 1");
    CHECK(facet(0.5, 1.3) == "y <= 1");
    CHECK(facet(-0.1, 0.5) == "x >= 0");
    CHECK(facet(0.5, -0.1) == "y >= 0");
    CHECK(facet(0.02, 0.03) == "x + y >= 1/s");
    CHECK_THROWS_AS(interp_weights(1.0, 2.0, 10.0), std::invalid_argument);
}

TEST_CASE("random interior points are reproduced") {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double s = 10.0;
    const auto verts = interp_vertices(s);
    int done = 0;
    while (done < 500) {
        const double x = u(rng), y = u(rng);
        if (x + y <= 1.0 / s) continue;
        ++done;
        const InterpPoint p = interp_weights_reciprocal(x, y, s);
        double sx = 0.0, sy = 0.0, sw = 0.0, iq = 0.0;
        for (std::size_t k = 0; k < 5; ++k) {
            CHECK(p.weights[k] >= 0.0);
            CHECK(p.weights[k] <= 1.0);
            sx += p.weights[k] * verts[k][0];
            sy += p.weights[k] * verts[k][1];
            sw += p.weights[k];
            iq += p.weights[k] * verts[k][2];
        }
        CHECK(std::abs(sx - x) < 1e-12);
        CHECK(std::abs(sy - y) < 1e-12);
        CHECK(std::abs(sw - 1.0) < 1e-12);
        CHECK(std::abs(iq - p.inv_q) < 1e-12);
    }
}
