#include "bilvar/ergodic.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "bilvar/parallel.hpp"
#include "bilvar/variation.hpp"

namespace bilvar {

namespace {

double wrap(double v) { return v - std::floor(v); }

// f(w + beta * mesh * c) for c in [-reach, reach]^d.
Field orbit_samples(std::span<const double> beta, const TorusFunction& f, std::span<const double> omega, int d,
                    std::int64_t reach, double mesh) {
    Coord o{0, 0, 0}, e{1, 1, 1};
    for (int a = 0; a < d; ++a) {
        o[static_cast<std::size_t>(a)] = -reach;
        e[static_cast<std::size_t>(a)] = 2 * reach + 1;
    }
    const Box box(d, o, e, 1.0);
    Field out(box);
    std::vector<double> w(static_cast<std::size_t>(d));
    for (std::size_t i = 0; i < box.size(); ++i) {
        const Coord c = box.coord_of(i);
        for (int a = 0; a < d; ++a) {
            const auto k = static_cast<std::size_t>(a);
            w[k] = wrap(omega[k] + beta[k] * mesh * static_cast<double>(c[k]));
        }
        out[i] = f(w);
    }
    return out;
}

void check_args(std::span<const double> beta, std::span<const double> omega, const ConvexBody& body, double mesh) {
    const auto d = static_cast<std::size_t>(body.d());
    if (beta.size() != d || omega.size() != d) throw std::invalid_argument("ergodic: torus dimension must match d");
    if (!(mesh > 0.0) || std::abs(1.0 / mesh - std::round(1.0 / mesh)) > 1e-9)
        throw std::invalid_argument("ergodic: mesh must divide 1");
}

}  // namespace

TorusFunction periodic_interpolant(const Field& samples) {
    const Box& b = samples.box();
    for (int a = 0; a < b.dim(); ++a) {
        if (b.origin()[static_cast<std::size_t>(a)] != 0) throw std::invalid_argument("periodic_interpolant: box must start at 0");
        if (std::abs(b.mesh() * static_cast<double>(b.extent()[static_cast<std::size_t>(a)]) - 1.0) > 1e-12)
            throw std::invalid_argument("periodic_interpolant: box must cover the torus");
    }
    return [samples](std::span<const double> w) {
        const Box& box = samples.box();
        const int d = box.dim();
        std::int64_t base[kMaxDim] = {0, 0, 0};
        double frac[kMaxDim] = {0.0, 0.0, 0.0};
        for (int a = 0; a < d; ++a) {
            const double u = wrap(w[static_cast<std::size_t>(a)]) / box.mesh();
            const double fl = std::floor(u);
            base[a] = static_cast<std::int64_t>(fl);
            frac[a] = u - fl;
        }
        double s = 0.0;
        for (int corner = 0; corner < (1 << d); ++corner) {
            Coord c{0, 0, 0};
            double wt = 1.0;
            for (int a = 0; a < d; ++a) {
                const bool up = (corner >> a) & 1;
                const std::int64_t n = box.extent()[static_cast<std::size_t>(a)];
                c[static_cast<std::size_t>(a)] = ((base[a] + (up ? 1 : 0)) % n + n) % n;
                wt *= up ? frac[a] : 1.0 - frac[a];
            }
            if (wt != 0.0) s += wt * samples[box.index_of(c)];
        }
        return s;
    };
}

double TrigPolynomial::operator()(std::span<const double> w) const {
    double s = 0.0;
    for (std::size_t k = 0; k < freq.size(); ++k) {
        double phase = 0.0;
        for (int a = 0; a < d; ++a) phase += freq[k][static_cast<std::size_t>(a)] * w[static_cast<std::size_t>(a)];
        phase *= 2.0 * std::numbers::pi;
        s += cos_coef[k] * std::cos(phase) + sin_coef[k] * std::sin(phase);
    }
    return s;
}

std::vector<double> ergodic_sweep(std::span<const double> beta, const TorusFunction& f1, const TorusFunction& f2,
                                  const ConvexBody& body, const TimeGrid& grid, std::span<const double> omega,
                                  double mesh) {
    check_args(beta, omega, body, mesh);
    if (grid.empty()) return {};
    const std::int64_t reach = reach_cells(body, grid.times().back(), AvgMode::continuum_quadrature, mesh);
    const Field g1 = orbit_samples(beta, f1, omega, body.d(), reach, mesh);
    const Field g2 = orbit_samples(beta, f2, omega, body.d(), reach, mesh);
    const PairKernel kernel(g1, g2);
    std::vector<double> out;
    out.reserve(grid.size());
    for (double t : grid.times()) {
        const Stencil st = make_stencil(body, lattice_scale(AvgMode::continuum_quadrature, t, mesh));
        out.push_back(kernel.average(st, Coord{0, 0, 0}));
    }
    return out;
}

double ergodic_bilinear_avg(std::span<const double> beta, const TorusFunction& f1, const TorusFunction& f2,
                            const ConvexBody& body, double t, std::span<const double> omega, double mesh) {
    return ergodic_sweep(beta, f1, f2, body, TimeGrid({t}), omega, mesh).front();
}

ErgodicRatio ergodic_variation_ratio(std::span<const double> beta, const TorusFunction& f1, const TorusFunction& f2,
                                     const ConvexBody& body, const TimeGrid& grid, double q, double p, double p1,
                                     double p2, int m, double mesh) {
    if (m < 1) throw std::invalid_argument("ergodic_variation_ratio: m must be positive");
    const int d = body.d();
    Coord e{1, 1, 1};
    for (int a = 0; a < d; ++a) e[static_cast<std::size_t>(a)] = m;
    const Box pts(d, {0, 0, 0}, e, 1.0 / m);
    std::vector<double> v(pts.size()), a1(pts.size()), a2(pts.size());
    parallel_for(pts.size(), [&](std::size_t i) {
        const Coord c = pts.coord_of(i);
        std::vector<double> w(static_cast<std::size_t>(d));
        for (int a = 0; a < d; ++a) w[static_cast<std::size_t>(a)] = (static_cast<double>(c[static_cast<std::size_t>(a)]) + 0.5) / m;
        v[i] = vq_exact(ergodic_sweep(beta, f1, f2, body, grid, w, mesh), q).value;
        a1[i] = std::abs(f1(w));
        a2[i] = std::abs(f2(w));
    });
    const double cell = std::pow(1.0 / m, d);
    const auto norm = [&](const std::vector<double>& x, double r) {
        double s = 0.0;
        for (double y : x) s += std::pow(y, r) * cell;
        return std::pow(s, 1.0 / r);
    };
    ErgodicRatio out;
    out.variation_norm = norm(v, p);
    out.input_norm = norm(a1, p1) * norm(a2, p2);
    out.ratio = out.input_norm > 0.0 ? out.variation_norm / out.input_norm : 0.0;
    return out;
}

}  // namespace bilvar
