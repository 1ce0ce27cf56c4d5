#include "doctest.h"

#include <cmath>
#include <random>

#include "bilvar/variation.hpp"
#include "support.hpp"

using namespace bilvar;

TEST_CASE("variation examples") {
    const std::vector<double> c(6, 2.5);
    CHECK(vq_exact(c, 2.0).value == 0.0);

    const std::vector<double> alt{0, 1, 0, 1, 0, 1};
    const auto a = vq_exact(alt, 2.0);
    CHECK(a.value == doctest::Approx(std::sqrt(5.0)));
    CHECK(a.witness == std::vector<std::size_t>{0, 1, 2, 3, 4, 5});

    const std::vector<double> ramp{0, 1, 2};
    const auto r = vq_exact(ramp, 2.0);
    CHECK(r.value == doctest::Approx(2.0));
    CHECK(r.witness == std::vector<std::size_t>{0, 2});

    CHECK(vq_exact(std::vector<double>{7.0}, 3.0).value == 0.0);
    CHECK_THROWS(vq_exact(ramp, 1.0));
    CHECK_THROWS(vq_exact(ramp, 17.0));
}

TEST_CASE("variation equals exhaustive enumeration") {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 2000; ++trial) {
        const std::size_t m = 1 + rng() % 12;
        std::vector<double> a(m);
        for (double& x : a) x = u(rng);
        const double q = 1.25 + static_cast<double>(rng() % 60) / 4.0;
        const auto out = vq_exact(a, q);
        CHECK(out.value == testing_support::exhaustive_variation(a, q));
        CHECK(std::pow(variation_sum(a, out.witness, q), 1.0 / q) == out.value);
    }
}

TEST_CASE("long variation") {
    const TimeGrid g({1.0, 1.5, 2.0, 3.0, 4.0});
    const std::vector<double> a{0, 9, 1, -9, 0};
    CHECK(long_variation(a, g, 2.0).value == doctest::Approx(std::sqrt(2.0)));
    CHECK(long_variation(std::vector<double>(5, 1.0), g, 2.0).value == 0.0);

    const TimeGrid dy = TimeGrid::geometric(0, 5, 1);
    const std::vector<double> b{0.3, -1, 2, 0.5, 0.25, 1};
    CHECK(long_variation(b, dy, 3.0).value == vq_exact(b, 3.0).value);
    CHECK(long_variation(std::vector<double>{1, 2}, TimeGrid({1.5, 3.0}), 2.0).no_anchors);
}

TEST_CASE("short variation") {
    CHECK(short_block(1.0) == -1);
    CHECK(short_block(1.5) == 0);
    CHECK(short_block(2.0) == 0);
    CHECK(short_block(0.75) == -1);
    const TimeGrid dy = TimeGrid::geometric(-2, 3, 1);
    CHECK(short_variation(std::vector<double>{1, 5, -2, 4, 0, 3}, dy, 2.0) == 0.0);
    CHECK(short_variation(std::vector<double>{0, 1}, TimeGrid({1.5, 2.0}), 2.0) == doctest::Approx(1.0));
    CHECK(short_variation(std::vector<double>{0, 1, 0, 2}, TimeGrid({1.5, 2.0, 3.0, 4.0}), 2.0) ==
          doctest::Approx(std::sqrt(5.0)));
}

TEST_CASE("split domination on complete grids") {
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 500; ++trial) {
        const TimeGrid g = TimeGrid::geometric(-1, 2 + static_cast<int>(rng() % 3), 1 + static_cast<int>(rng() % 4));
        std::vector<double> a(g.size());
        for (double& x : a) x = u(rng);
        const auto r = split_domination_check(a, g, 2.0 + static_cast<double>(rng() % 8) / 2.0);
        CHECK(r.complete);
        CHECK(r.holds);
    }
}

TEST_CASE("product rule and sup bound") {
    CHECK(product_rule_check(std::vector<double>{0, 1}, std::vector<double>{0, 1}, 2.0).lhs == 1.0);
    CHECK(product_rule_check(std::vector<double>{0, 1}, std::vector<double>{0, 1}, 2.0).rhs == 2.0);
    const auto eq = product_rule_check(std::vector<double>{0, 2, -1}, std::vector<double>{3, 3, 3}, 2.0);
    CHECK(eq.lhs == doctest::Approx(eq.rhs));
    const auto s = sup_vs_variation_check(std::vector<double>{0, 5}, 2.0, 0);
    CHECK(s.lhs == 5.0);
    CHECK(s.rhs == 10.0);
    const auto flat = sup_vs_variation_check(std::vector<double>(4, -2.0), 3.0, 2);
    CHECK(flat.lhs == flat.rhs);

    std::mt19937_64 rng(10);
    for (int trial = 0; trial < 2000; ++trial) {
        const std::size_t m = 2 + rng() % 10;
        std::vector<double> a(m), b(m);
        for (std::size_t i = 0; i < m; ++i) {
            a[i] = rng() % 2 ? 1.0 : -1.0;
            b[i] = rng() % 2 ? 1.0 : -1.0;
        }
        CHECK(product_rule_check(a, b, 2.5).holds);
        CHECK(sup_vs_variation_check(a, 2.5, rng() % m).holds);
    }
}
