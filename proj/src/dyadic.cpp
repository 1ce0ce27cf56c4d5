#include "bilvar/dyadic.hpp"

#include <stdexcept>

namespace bilvar {

DyadicCube cube_containing(const Coord& cell, int level, int dim) {
    DyadicCube q{level, {0, 0, 0}};
    for (int a = 0; a < dim; ++a) q.index[a] = floor_shift(cell[a], level);
    return q;
}

Box cube_box(const DyadicCube& cube, int dim, double mesh) {
    Coord o{0, 0, 0}, e{1, 1, 1};
    for (int a = 0; a < dim; ++a) {
        o[a] = cube.index[a] * (std::int64_t{1} << cube.level);
        e[a] = std::int64_t{1} << cube.level;
    }
    return Box(dim, o, e, mesh);
}

DyadicCube parent(const DyadicCube& cube, int dim) {
    DyadicCube p{cube.level + 1, {0, 0, 0}};
    for (int a = 0; a < dim; ++a) p.index[a] = floor_shift(cube.index[a], 1);
    return p;
}

Box dyadic_hull(const Box& box, int level) {
    if (level < 0) throw std::invalid_argument("dyadic_hull: negative level");
    const int d = box.dim();
    Coord o{0, 0, 0}, e{1, 1, 1};
    const Coord up = box.upper();
    for (int a = 0; a < d; ++a) {
        const std::int64_t lo = floor_shift(box.origin()[a], level);
        const std::int64_t hi = floor_shift(up[a] - 1, level);
        o[a] = lo << level;
        e[a] = (hi - lo + 1) << level;
    }
    return Box(d, o, e, box.mesh());
}

int covering_level(const Box& support) {
    const Coord up = support.upper();
    for (int j = 0; j < 62; ++j) {
        bool ok = true;
        for (int a = 0; a < support.dim() && ok; ++a) {
            const std::int64_t lo = floor_shift(support.origin()[a], j);
            const std::int64_t hi = floor_shift(up[a] - 1, j);
            ok = (lo == hi) || (lo == -1 && hi == 0);
        }
        if (ok) return j;
    }
    throw std::invalid_argument("covering_level: support too large");
}

std::vector<DyadicCube> cubes_meeting(const Box& box, int level) {
    const Box hull = dyadic_hull(box, level);
    const int d = box.dim();
    Coord ext{1, 1, 1};
    for (int a = 0; a < d; ++a) ext[a] = hull.extent()[a] >> level;
    const Box coarse(d, {0, 0, 0}, ext, 1.0);
    std::vector<DyadicCube> out;
    out.reserve(coarse.size());
    for (std::size_t i = 0; i < coarse.size(); ++i) {
        const Coord c = coarse.coord_of(i);
        DyadicCube q{level, {0, 0, 0}};
        for (int a = 0; a < d; ++a) q.index[a] = (hull.origin()[a] >> level) + c[a];
        out.push_back(q);
    }
    return out;
}

std::size_t CubeGrid::cube_cells() const {
    return std::size_t{1} << (level * fine.dim());
}

CubeGrid cube_means(const Field& f, int level) {
    const int d = f.box().dim();
    CubeGrid g;
    g.level = level;
    g.fine = dyadic_hull(f.box(), level);
    Coord co{0, 0, 0}, ce{1, 1, 1};
    for (int a = 0; a < d; ++a) {
        co[a] = g.fine.origin()[a] >> level;
        ce[a] = g.fine.extent()[a] >> level;
    }
    g.coarse = Box(d, co, ce, 1.0);
    g.values.assign(g.coarse.size(), 0.0);
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double v = f[i];
        if (v == 0.0) continue;
        const Coord c = f.box().coord_of(i);
        Coord q{0, 0, 0};
        for (int a = 0; a < d; ++a) q[a] = floor_shift(c[a], level);
        g.values[g.coarse.index_of(q)] += v;
    }
    const double inv = 1.0 / static_cast<double>(g.cube_cells());
    for (double& v : g.values) v *= inv;
    return g;
}

Field expand(const CubeGrid& grid, int dim, double mesh) {
    const Box fine(dim, grid.fine.origin(), grid.fine.extent(), mesh);
    Field out(fine);
    for (std::size_t i = 0; i < out.size(); ++i) {
        const Coord c = fine.coord_of(i);
        Coord q{0, 0, 0};
        for (int a = 0; a < dim; ++a) q[a] = floor_shift(c[a], grid.level);
        out[i] = grid.values[grid.coarse.index_of(q)];
    }
    return out;
}

}  // namespace bilvar
