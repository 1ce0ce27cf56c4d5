#include "doctest.h"

#include <cmath>
#include <random>

#include "bilvar/averaging.hpp"
#include "support.hpp"

using namespace bilvar;

namespace {

Field delta(const Box& box, std::int64_t c) {
    Field f(box);
    f[box.index_of({c, 0, 0})] = 1.0;
    return f;
}

Field integer_field(std::mt19937_64& rng, const Box& box) {
    std::uniform_int_distribution<int> u(-3, 3);
    Field f(box);
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = u(rng);
    return f;
}

ConvexBody random_body(std::mt19937_64& rng, int d) {
    std::uniform_real_distribution<double> u(-0.4, 0.4);
    switch (rng() % 3) {
        case 0: return normalize(ConvexBody::ball(d));
        case 1: return normalize(ConvexBody::cube(d));
        default: {
            std::vector<double> m(static_cast<std::size_t>(4 * d * d));
            for (double& x : m) x = u(rng);
            for (int i = 0; i < 2 * d; ++i) m[static_cast<std::size_t>(i * (2 * d + 1))] += 1.0;
            return normalize(ConvexBody::gamma(d, m));
        }
    }
}

}  // namespace

TEST_CASE("lattice averages by hand") {
    const ConvexBody b = ConvexBody::ball(1);
    const Box box = Box::line(-4, 9);
    const Field d0 = delta(box, 0);
    CHECK(avg_at({b, 1.0, d0, d0}, {0, 0, 0}) == doctest::Approx(0.2));
    const Field d1 = delta(box, 1);
    CHECK(avg_at({b, 1.0, d1, d0}, {0, 0, 0}) == doctest::Approx(0.2));
    CHECK(avg_at({b, 1.0, d1, d1}, {0, 0, 0}) == 0.0);
}

TEST_CASE("constants reproduce their product") {
    const ConvexBody g = normalize(ConvexBody::gamma(1, {1.0, 0.3, -0.2, 0.8}));
    const Box box = Box::line(-100, 200, 0.25);
    const Field c1(box, std::vector<double>(box.size(), 3.0));
    const Field c2(box, std::vector<double>(box.size(), -0.5));
    for (AvgMode mode : {AvgMode::lattice_counting, AvgMode::continuum_quadrature}) {
        CHECK(avg_at({g, 5.0, c1, c2, mode}, {0, 0, 0}) == doctest::Approx(-1.5).epsilon(1e-14));
    }
    const auto sweep = avg_sweep(g, TimeGrid::geometric(0, 4, 3), c1, c2, {0, 0, 0});
    for (double v : sweep) CHECK(v == doctest::Approx(-1.5).epsilon(1e-14));
    CHECK(avg_sweep(g, TimeGrid(), c1, c2, {0, 0, 0}).empty());
}

TEST_CASE("continuum scale t at mesh h is lattice scale t / h") {
    std::mt19937_64 rng(4);
    const ConvexBody b = normalize(ConvexBody::ball(1));
    const Field f1 = testing_support::random_field(rng, Box::line(0, 40, 0.125));
    const Field f2 = testing_support::random_field(rng, Box::line(0, 40, 0.125));
    CHECK(avg_at({b, 1.0, f1, f2, AvgMode::continuum_quadrature}, {20, 0, 0}) ==
          avg_at({b, 8.0, f1, f2, AvgMode::lattice_counting}, {20, 0, 0}));
    CHECK(avg_at({b, 0.1, f1, f2}, {20, 0, 0}) == f1[20] * f2[20]);
    CHECK_THROWS_AS(avg_at({b, 0.0, f1, f2}, {0, 0, 0}), std::invalid_argument);
}

TEST_CASE("sweep agrees with pointwise evaluation") {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 40; ++trial) {
        const int d = 1 + trial % 2;
        const ConvexBody body = random_body(rng, d);
        const Box box = d == 1 ? Box::line(-6, 13) : Box::square(-3, 7);
        const Field f1 = testing_support::random_field(rng, box);
        const Field f2 = testing_support::random_field(rng, box);
        const TimeGrid grid = TimeGrid::geometric(0, d == 1 ? 4 : 2, 3);
        const Coord x{1, d == 2 ? -1 : 0, 0};
        const auto sweep = avg_sweep(body, grid, f1, f2, x);
        for (std::size_t i = 0; i < grid.size(); ++i)
            CHECK(std::abs(sweep[i] - avg_at({body, grid.times()[i], f1, f2}, x)) < 1e-12);
    }
}

TEST_CASE("run kernel equals direct summation on integer data") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 1000; ++trial) {
        const ConvexBody body = random_body(rng, 1);
        const Field f1 = integer_field(rng, Box::line(-8, 17));
        const Field f2 = integer_field(rng, Box::line(-5, 13));
        const double t = 1.0 + static_cast<double>(rng() % 700) / 100.0;
        const Coord x{static_cast<std::int64_t>(rng() % 9) - 4, 0, 0};
        const AvgRequest req{body, t, f1, f2};
        CHECK(fast_slice_avg(req, x) == avg_at(req, x));
    }
}

TEST_CASE("run kernel on real data and in two dimensions") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 60; ++trial) {
        const int d = 1 + trial % 2;
        const ConvexBody body = random_body(rng, d);
        const Box box = d == 1 ? Box::line(-8, 17) : Box::square(-3, 7);
        const Field f1 = testing_support::random_field(rng, box);
        const Field f2 = testing_support::random_field(rng, box);
        const double t = d == 1 ? 5.5 : 2.5;
        const Field all = avg_field({body, t, f1, f2}, box);
        for (std::size_t i = 0; i < box.size(); i += 3)
            CHECK(std::abs(all[i] - avg_at({body, t, f1, f2}, box.coord_of(i))) < 1e-12);
    }
}

TEST_CASE("single-slice reduction") {
    std::mt19937_64 rng(21);
    const ConvexBody b = normalize(ConvexBody::ball(1));
    const Box box = Box::line(-10, 21);
    const Field d0 = delta(box, 0);
    const Field f2 = testing_support::random_field(rng, box);
    const double t = 6.0;
    const Stencil st = make_stencil(b, t);
    double slice = 0.0;
    for (const Run& r : st.runs)
        if (r.prefix[0] == 0)
            for (std::int64_t y = r.lo; y <= r.hi; ++y) slice += f2.at({y, 0, 0});
    CHECK(fast_slice_avg({b, t, d0, f2}, {0, 0, 0}) == doctest::Approx(slice / static_cast<double>(st.count)));
    CHECK(fast_slice_avg({b, t, d0, Field(box)}, {0, 0, 0}) == 0.0);
}

TEST_CASE("time grids") {
    const TimeGrid g = TimeGrid::geometric(-2, 2, 4);
    CHECK(g.size() == 17);
    CHECK(g.anchors().size() == 5);
    CHECK(g.dyadically_complete());
    CHECK(g.anchor_exponent(g.anchors().front()) == -2);
    CHECK_FALSE(TimeGrid({1.0, 1.5, 4.0}).dyadically_complete());
    CHECK_FALSE(TimeGrid({1.5, 2.0}).dyadically_complete());
    CHECK_THROWS(TimeGrid({1.0, 1.0}));
    CHECK_THROWS(TimeGrid({-1.0}));
}

TEST_CASE("identity change of variables decouples") {
    // Lambda = I: the region is a product of two balls of R^1, i.e. two
    // independent interval averages.
    std::mt19937_64 rng(31);
    const Box box = Box::line(-40, 81, 0.125);
    const Field f1 = testing_support::random_field(rng, box);
    const Field f2 = testing_support::random_field(rng, box);
    const double t = 1.0;
    const Coord x{3, 0, 0};
    const double m = dtt_avg({1, 0, 0, 1}, t, f1, f2, x);
    const auto interval_mean = [&](const Field& f) {
        const auto nodes = static_cast<std::int64_t>(std::ceil(2.0 * t / 0.125));
        const double step = 2.0 * t / static_cast<double>(nodes);
        double s = 0.0;
        std::int64_t n = 0;
        for (std::int64_t k = 0; k < nodes; ++k) {
            const double u = -t + (static_cast<double>(k) + 0.5) * step;
            if (std::abs(u) >= t) continue;
            const double p = 3 * 0.125 + u;
            s += interpolate(f, std::span<const double>(&p, 1));
            ++n;
        }
        return s / static_cast<double>(n);
    };
    CHECK(m == doctest::Approx(interval_mean(f1) * interval_mean(f2)).epsilon(1e-12));

    const Field c1(box, std::vector<double>(box.size(), 2.0));
    CHECK(dtt_avg({1, 0.2, 0.1, 1}, 0.5, c1, c1, {0, 0, 0}) == doctest::Approx(4.0));
    CHECK_THROWS(dtt_avg({1, 1, 1, 1}, 0.5, c1, c1, {0, 0, 0}));
}

TEST_CASE("interpolation is exact on grid points and linear between") {
    const Field f(Box::line(0, 3, 0.5), {1.0, 3.0, -1.0});
    const double p0 = 0.5, p1 = 0.75, p2 = -0.25;
    CHECK(interpolate(f, std::span<const double>(&p0, 1)) == 3.0);
    CHECK(interpolate(f, std::span<const double>(&p1, 1)) == doctest::Approx(1.0));
    CHECK(interpolate(f, std::span<const double>(&p2, 1)) == doctest::Approx(0.5));
}
