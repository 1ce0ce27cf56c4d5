#include "doctest.h"

#include <cmath>
#include <vector>

#include "bilvar/counterexample.hpp"

using namespace bilvar;

namespace {

// Midpoint grid over the disk of radius r in R^2.
double grid_average(const CounterexampleInstance& inst, double r, double x, int nodes) {
    const double step = 2.0 * r / nodes;
    double hit = 0.0, all = 0.0;
    for (int i = 0; i < nodes; ++i) {
        const double y1 = -r + (i + 0.5) * step;
        for (int j = 0; j < nodes; ++j) {
            const double y2 = -r + (j + 0.5) * step;
            if (y1 * y1 + y2 * y2 > r * r) continue;
            all += 1.0;
            const double v1 = std::abs(x + y1), v2 = std::abs(x + y2);
            bool in_e = false;
            for (int k = 0; k <= inst.n; ++k) in_e = in_e || (v1 > inst.annulus_inner(k) && v1 <= inst.annulus_outer(k));
            if (in_e && v2 <= inst.f_radius()) hit += 1.0;
        }
    }
    return hit / all;
}

}  // namespace

TEST_CASE("closed form against quadrature") {
    for (int d : {1, 2}) {
        const std::vector<double> origin(static_cast<std::size_t>(d), 0.0);
        for (double a : {1.05, 1.5, 2.0, 3.3, 6.4, 10.0}) {
            CHECK(std::abs(outside_fraction_closed(d, a) - outside_fraction_quadrature(d, a, origin)) < 1e-6);
        }
    }
}

TEST_CASE("outside fraction is monotone and vanishes at one") {
    for (int d : {1, 2}) {
        CHECK(outside_fraction_closed(d, 1.0) == 0.0);
        CHECK(outside_fraction_closed(d, 1.0 + 1e-9) < 1e-4);
        double prev = 0.0;
        for (int k = 1; k <= 2000; ++k) {
            const double v = outside_fraction_closed(d, 1.0 + 0.01 * k);
            CHECK(v >= prev);
            prev = v;
        }
    }
}

TEST_CASE("growth ratio") {
    const GrowthRatio g1 = find_growth_ratio(1);
    CHECK(g1.fraction > 0.8);
    CHECK(outside_fraction_closed(1, g1.alpha - 0.01) <= 0.8);
    CHECK(g1.alpha == doctest::Approx(6.4).epsilon(0.01));
    CHECK(g1.probe_margin >= 0.02);
    const GrowthRatio g2 = find_growth_ratio(2);
    CHECK(g2.fraction > 0.8);
    CHECK(g2.alpha > 3.078);
    CHECK(g2.alpha < 3.1);
    CHECK_THROWS(find_growth_ratio(3));
}

TEST_CASE("averages against a brute-force grid") {
    const CounterexampleInstance inst = make_counterexample(1, 2);
    for (int i = 1; i <= 5; ++i) {
        const double r = std::pow(inst.alpha, i);
        for (double x : {0.0, 0.6 * inst.eps0}) {
            const double exact = counterexample_average(inst, i, std::vector<double>{x});
            CHECK(std::abs(exact - grid_average(inst, r, x, 1500)) < 4e-3);
        }
    }
}

TEST_CASE("alternation in one dimension") {
    for (int n = 1; n <= 4; ++n) {
        const auto rows = alternation_table(make_counterexample(1, n));
        CHECK(rows.size() == 9u * static_cast<std::size_t>(2 * n + 1));
        for (const auto& r : rows) CHECK(r.pass);
    }
}

TEST_CASE("alternation in two dimensions") {
    const auto rows = alternation_table(make_counterexample(2, 1));
    for (const auto& r : rows) CHECK(r.pass);
}

TEST_CASE("variation lower bound") {
    const auto v0 = counterexample_variation(make_counterexample(1, 0), 3.0);
    CHECK(v0.value == 0.0);
    const auto v1 = counterexample_variation(make_counterexample(1, 1), 3.0);
    CHECK(v1.derived_bound == doctest::Approx(std::cbrt(0.25)));
    CHECK(v1.value >= v1.derived_bound);
    double prev = v1.value;
    for (int n = 2; n <= 5; ++n) {
        const auto v = counterexample_variation(make_counterexample(1, n), 3.0);
        CHECK(v.meets_derived);
        CHECK(v.value > prev);
        prev = v.value;
    }
}
