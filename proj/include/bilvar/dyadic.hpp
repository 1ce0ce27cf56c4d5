#pragma once

#include <cstdint>
#include <vector>

#include "bilvar/field.hpp"

namespace bilvar {

/// floor(c / 2^level) for any sign of c.
inline std::int64_t floor_shift(std::int64_t c, int level) {
    return c >> level;  // arithmetic shift floors on two's complement
}

/// Dyadic cube [index * 2^level, (index + 1) * 2^level)^d in cell units.
struct DyadicCube {
    int level = 0;
    Coord index{0, 0, 0};

    bool operator==(const DyadicCube&) const = default;
};

DyadicCube cube_containing(const Coord& cell, int level, int dim);
Box cube_box(const DyadicCube& cube, int dim, double mesh);
DyadicCube parent(const DyadicCube& cube, int dim);

/// Smallest box aligned to level-`level` cubes containing `box`.
Box dyadic_hull(const Box& box, int level);

/// Smallest level at which the support is covered by a single cube, or by
/// the cubes adjacent to the origin in axes where it straddles zero. Above
/// this level the family of cubes meeting the support no longer changes
/// shape.
int covering_level(const Box& support);

/// All level-`level` cubes meeting `box`, in row-major order.
std::vector<DyadicCube> cubes_meeting(const Box& box, int level);

/// Coarse view of a field on a box aligned at `level`: one value per cube.
struct CubeGrid {
    int level = 0;
    Box fine;            // aligned box in cell units
    Box coarse;          // same region, one cell per cube (mesh 1)
    std::vector<double> values;

    std::size_t cube_cells() const;
};

/// Per-cube means of `f` on the hull of `f.box()` at `level` (zero extended).
CubeGrid cube_means(const Field& f, int level);
/// Expands per-cube values back to a fine field on `grid.fine`.
Field expand(const CubeGrid& grid, int dim, double mesh);

}  // namespace bilvar
