#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "bilvar/field.hpp"

namespace bilvar::harness {

enum class Family { indicators, trig, spikes };

std::string to_string(Family f);

/// Family of trial `trial` under the `families` setting (mixed cycles
/// through all three).
Family pick_family(const std::string& families, std::uint64_t trial);

/// Random function on [0, 1)^d, zero outside. Indicator edges and spike
/// cells sit on multiples of 1/64, so sampling at any grid that is a
/// multiple of 64 represents the same function exactly.
class RandomFunction {
public:
    RandomFunction(Family family, int d, std::mt19937_64& rng);

    Family family() const { return family_; }
    double operator()(std::span<const double> x) const;
    /// Sampled at cell centers on [0, 1)^d with the given cells per unit.
    Field sample(int grid) const;

private:
    struct Piece {
        double lo[2] = {0, 0};
        double hi[2] = {0, 0};
        double value = 0.0;
    };
    struct Wave {
        int k[2] = {0, 0};
        double c = 0.0;
        double s = 0.0;
    };
    Family family_;
    int d_;
    std::vector<Piece> pieces_;
    std::vector<Wave> waves_;
};

/// Field constant on level-(n-1) dyadic cubes, on an aligned box of
/// `cubes` cubes per side; each cube is nonzero with probability `density`.
Field step_field(std::mt19937_64& rng, int d, int n, std::int64_t cubes, double density);

/// Uniform values in [-1, 1] on the box.
Field uniform_field(std::mt19937_64& rng, const Box& box);

}  // namespace bilvar::harness
