#include "bilvar/harness/generators.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "bilvar/dyadic.hpp"

namespace bilvar::harness {

namespace {

constexpr int kUnit = 64;

}  // namespace

std::string to_string(Family f) {
    switch (f) {
        case Family::indicators: return "indicators";
        case Family::trig: return "trig";
        case Family::spikes: return "spikes";
    }
    return "?";
}

Family pick_family(const std::string& families, std::uint64_t trial) {
    if (families == "indicators") return Family::indicators;
    if (families == "trig") return Family::trig;
    if (families == "spikes") return Family::spikes;
    return static_cast<Family>(trial % 3);
}

RandomFunction::RandomFunction(Family family, int d, std::mt19937_64& rng) : family_(family), d_(d) {
    if (d != 1 && d != 2) throw std::invalid_argument("RandomFunction: d must be 1 or 2");
    std::uniform_int_distribution<int> cell(0, kUnit - 1);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    switch (family) {
        case Family::indicators: {
            const int count = 1 + static_cast<int>(rng() % 3);
            for (int i = 0; i < count; ++i) {
                Piece p;
                for (int a = 0; a < d; ++a) {
                    int x = cell(rng), y = cell(rng);
                    if (x > y) std::swap(x, y);
                    p.lo[a] = static_cast<double>(x) / kUnit;
                    p.hi[a] = static_cast<double>(y + 1) / kUnit;
                }
                p.value = 1.0;
                pieces_.push_back(p);
            }
            break;
        }
        case Family::trig: {
            const int count = 1 + static_cast<int>(rng() % 4);
            for (int i = 0; i < count; ++i) {
                Wave w;
                for (int a = 0; a < d; ++a) w.k[a] = 1 + static_cast<int>(rng() % 4);
                w.c = u(rng);
                w.s = u(rng);
                waves_.push_back(w);
            }
            break;
        }
        case Family::spikes: {
            const int count = 1 + static_cast<int>(rng() % 4);
            for (int i = 0; i < count; ++i) {
                Piece p;
                for (int a = 0; a < d; ++a) {
                    const int x = cell(rng);
                    p.lo[a] = static_cast<double>(x) / kUnit;
                    p.hi[a] = static_cast<double>(x + 1) / kUnit;
                }
                p.value = 4.0 * u(rng);
                pieces_.push_back(p);
            }
            break;
        }
    }
}

double RandomFunction::operator()(std::span<const double> x) const {
    for (int a = 0; a < d_; ++a)
        if (x[static_cast<std::size_t>(a)] < 0.0 || x[static_cast<std::size_t>(a)] >= 1.0) return 0.0;
    if (family_ == Family::trig) {
        double s = 0.0;
        for (const Wave& w : waves_) {
            double phase = 0.0;
            for (int a = 0; a < d_; ++a) phase += w.k[a] * x[static_cast<std::size_t>(a)];
            phase *= 2.0 * std::numbers::pi;
            s += w.c * std::cos(phase) + w.s * std::sin(phase);
        }
        return s;
    }
    double s = 0.0;
    for (const Piece& p : pieces_) {
        bool in = true;
        for (int a = 0; a < d_ && in; ++a)
            in = x[static_cast<std::size_t>(a)] >= p.lo[a] && x[static_cast<std::size_t>(a)] < p.hi[a];
        if (!in) continue;
        // overlapping indicators stay indicators
        if (family_ == Family::indicators) return 1.0;
        s += p.value;
    }
    return s;
}

Field RandomFunction::sample(int grid) const {
    const double h = 1.0 / grid;
    const Box box = d_ == 1 ? Box::line(0, grid, h) : Box::square(0, grid, h);
    Field f(box);
    double x[2] = {0, 0};
    for (std::size_t i = 0; i < box.size(); ++i) {
        const Coord c = box.coord_of(i);
        for (int a = 0; a < d_; ++a) x[a] = (static_cast<double>(c[static_cast<std::size_t>(a)]) + 0.5) * h;
        f[i] = (*this)(std::span<const double>(x, static_cast<std::size_t>(d_)));
    }
    return f;
}

Field step_field(std::mt19937_64& rng, int d, int n, std::int64_t cubes, double density) {
    if (n < 1) throw std::invalid_argument("step_field: n must be at least 1");
    const std::int64_t side = std::int64_t{1} << (n - 1);
    const std::int64_t origin = -side * (cubes / 2);
    const Box box = d == 1 ? Box::line(origin, side * cubes) : Box::square(origin, side * cubes);
    std::uniform_real_distribution<double> u(-1.0, 1.0), coin(0.0, 1.0);
    std::vector<double> vals(static_cast<std::size_t>(d == 1 ? cubes : cubes * cubes));
    for (double& v : vals) v = coin(rng) < density ? u(rng) : 0.0;
    Field f(box);
    for (std::size_t i = 0; i < box.size(); ++i) {
        const DyadicCube q = cube_containing(box.coord_of(i), n - 1, d);
        std::int64_t k = q.index[0] - origin / side;
        if (d == 2) k = k * cubes + (q.index[1] - origin / side);
        f[i] = vals[static_cast<std::size_t>(k)];
    }
    return f;
}

Field uniform_field(std::mt19937_64& rng, const Box& box) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Field f(box);
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = u(rng);
    return f;
}

}  // namespace bilvar::harness
