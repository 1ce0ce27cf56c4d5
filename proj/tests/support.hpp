#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "bilvar/field.hpp"

namespace testing_support {

using bilvar::Box;
using bilvar::Field;

inline Field random_field(std::mt19937_64& rng, const Box& box, double lo = -1.0, double hi = 1.0) {
    std::uniform_real_distribution<double> u(lo, hi);
    Field f(box);
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = u(rng);
    return f;
}

inline Field indicator(const Box& box, std::int64_t lo, std::int64_t hi) {
    Field f(box);
    for (std::size_t i = 0; i < f.size(); ++i) {
        const auto c = box.coord_of(i)[0];
        f[i] = (c >= lo && c < hi) ? 1.0 : 0.0;
    }
    return f;
}

// Every increasing subsequence of length >= 2, summed left to right.
inline double exhaustive_variation(const std::vector<double>& a, double q) {
    const std::size_t m = a.size();
    double best = 0.0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
        double s = 0.0;
        long prev = -1;
        for (std::size_t i = 0; i < m; ++i) {
            if (!((mask >> i) & 1)) continue;
            if (prev >= 0) {
                const double x = std::abs(a[i] - a[static_cast<std::size_t>(prev)]);
                s += q > 8.0 ? (x == 0.0 ? 0.0 : std::exp(q * std::log(x))) : std::pow(x, q);
            }
            prev = static_cast<long>(i);
        }
        if (s > best) best = s;
    }
    return std::pow(best, 1.0 / q);
}

}  // namespace testing_support
