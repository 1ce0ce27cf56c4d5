#include "bilvar/convex_body.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace bilvar {

std::string to_string(BodyKind kind) {
    switch (kind) {
        case BodyKind::ball: return "ball";
        case BodyKind::cube: return "cube";
        case BodyKind::gamma: return "gamma";
        case BodyKind::polytope: return "polytope";
    }
    return "unknown";
}

namespace {

void check_d(int d) {
    if (d < 1 || d > 2) throw std::invalid_argument("ConvexBody: d must be 1 or 2");
}

}  // namespace

ConvexBody ConvexBody::ball(int d, double radius) {
    check_d(d);
    if (!(radius > 0.0)) throw std::invalid_argument("ConvexBody::ball: radius must be positive");
    ConvexBody b;
    b.kind_ = BodyKind::ball;
    b.d_ = d;
    b.param_ = radius;
    b.r_in_ = radius;
    b.r_out_ = radius;
    return b;
}

ConvexBody ConvexBody::cube(int d, double half_side) {
    check_d(d);
    if (!(half_side > 0.0)) throw std::invalid_argument("ConvexBody::cube: half side must be positive");
    ConvexBody b;
    b.kind_ = BodyKind::cube;
    b.d_ = d;
    b.param_ = half_side;
    b.r_in_ = half_side;
    b.r_out_ = half_side * std::sqrt(2.0 * d);
    return b;
}

ConvexBody ConvexBody::gamma(int d, std::vector<double> g) {
    check_d(d);
    const int n = 2 * d;
    if (g.size() != static_cast<std::size_t>(n * n)) throw std::invalid_argument("ConvexBody::gamma: need a 2d x 2d matrix");
    Eigen::MatrixXd m(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) m(r, c) = g[static_cast<std::size_t>(r * n + c)];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m.transpose() * m);
    const double smin = std::sqrt(std::max(eig.eigenvalues().minCoeff(), 0.0));
    const double smax = std::sqrt(eig.eigenvalues().maxCoeff());
    if (!(smin > 1e-12 * smax)) throw std::invalid_argument("ConvexBody::gamma: matrix is singular");
    ConvexBody b;
    b.kind_ = BodyKind::gamma;
    b.d_ = d;
    b.gamma_ = std::move(g);
    // Gamma^{-1}(B x B) with B(1) in B x B in B(sqrt 2).
    b.r_in_ = 1.0 / smax;
    b.r_out_ = std::sqrt(2.0) / smin;
    return b;
}

ConvexBody ConvexBody::polytope(int d, std::vector<std::vector<double>> rows, double r_in, double r_out,
                                std::uint64_t seed) {
    check_d(d);
    if (!(r_in > 0.0) || !(r_out >= r_in)) throw std::invalid_argument("ConvexBody::polytope: need 0 < r_in <= r_out");
    for (const auto& row : rows) {
        if (row.size() != static_cast<std::size_t>(2 * d)) throw std::invalid_argument("ConvexBody::polytope: row length must be 2d");
    }
    if (rows.empty()) throw std::invalid_argument("ConvexBody::polytope: no half spaces");
    ConvexBody b;
    b.kind_ = BodyKind::polytope;
    b.d_ = d;
    b.rows_ = std::move(rows);
    b.r_in_ = r_in;
    b.r_out_ = r_out;
    const SpotCheckReport rep = spot_check(b, 10000, seed);
    if (!rep.ok()) throw std::invalid_argument("ConvexBody::polytope: certificate spot check failed");
    return b;
}

bool ConvexBody::normalized() const { return std::abs(r_out_ - 1.0) < 1e-12; }

double ConvexBody::raw_gauge(const double* y) const {
    const int n = 2 * d_;
    switch (kind_) {
        case BodyKind::ball: {
            double s = 0.0;
            for (int i = 0; i < n; ++i) s += y[i] * y[i];
            return std::sqrt(s) / param_;
        }
        case BodyKind::cube: {
            double m = 0.0;
            for (int i = 0; i < n; ++i) m = std::max(m, std::abs(y[i]));
            return m / param_;
        }
        case BodyKind::gamma: {
            double blocks[2] = {0.0, 0.0};
            for (int r = 0; r < n; ++r) {
                double s = 0.0;
                for (int c = 0; c < n; ++c) s += gamma_[static_cast<std::size_t>(r * n + c)] * y[c];
                blocks[r / d_] += s * s;
            }
            return std::sqrt(std::max(blocks[0], blocks[1]));
        }
        case BodyKind::polytope: {
            double m = 0.0;
            for (const auto& row : rows_) {
                double s = 0.0;
                for (int i = 0; i < n; ++i) s += row[static_cast<std::size_t>(i)] * y[i];
                m = std::max(m, s);
            }
            return m;
        }
    }
    return 0.0;
}

double ConvexBody::gauge(std::span<const double> y) const {
    if (y.size() != static_cast<std::size_t>(2 * d_)) throw std::invalid_argument("ConvexBody::gauge: wrong dimension");
    return raw_gauge(y.data()) / scale_;
}

double ConvexBody::gauge(const LatticePoint& p) const {
    double y[4];
    for (int i = 0; i < 4; ++i) y[i] = static_cast<double>(p[static_cast<std::size_t>(i)]);
    return raw_gauge(y) / scale_;
}

bool ConvexBody::contains(std::span<const double> y, double t) const {
    return gauge(y) <= t * (1.0 + kMembershipSlack);
}

bool ConvexBody::contains(const LatticePoint& p, double t) const {
    return gauge(p) <= t * (1.0 + kMembershipSlack);
}

ConvexBody ConvexBody::scaled(double factor) const {
    if (!(factor > 0.0)) throw std::invalid_argument("ConvexBody::scaled: factor must be positive");
    ConvexBody b = *this;
    b.scale_ *= factor;
    b.r_in_ *= factor;
    b.r_out_ *= factor;
    return b;
}

ConvexBody normalize(const ConvexBody& body) {
    ConvexBody b = body.scaled(1.0 / body.r_out());
    return b;
}

SpotCheckReport spot_check(const ConvexBody& body, std::size_t samples, std::uint64_t seed) {
    const int n = body.ambient_dim();
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    SpotCheckReport rep;
    std::vector<double> u(static_cast<std::size_t>(n)), y(static_cast<std::size_t>(n)), z(static_cast<std::size_t>(n));
    for (std::size_t s = 0; s < samples; ++s) {
        double norm = 0.0;
        for (double& v : u) {
            v = gauss(rng);
            norm += v * v;
        }
        norm = std::sqrt(norm);
        for (int i = 0; i < n; ++i) y[static_cast<std::size_t>(i)] = u[static_cast<std::size_t>(i)] / norm * body.r_in() * (1.0 - 1e-12);
        if (!body.contains(y)) ++rep.inner_failures;
        for (int i = 0; i < n; ++i) y[static_cast<std::size_t>(i)] = u[static_cast<std::size_t>(i)] / norm * body.r_out() * (1.0 + 1e-9);
        if (body.contains(y)) ++rep.outer_failures;
        ++rep.directions;
    }
    // Midpoint convexity and symmetry on random members of the bounding cube.
    std::size_t pairs = 0, attempts = 0;
    while (pairs < samples && attempts < 100 * samples) {
        ++attempts;
        for (auto& v : y) v = unif(rng) * body.r_out();
        for (auto& v : z) v = unif(rng) * body.r_out();
        if (!body.contains(y) || !body.contains(z)) continue;
        ++pairs;
        std::vector<double> mid(static_cast<std::size_t>(n)), neg(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            mid[static_cast<std::size_t>(i)] = 0.5 * (y[static_cast<std::size_t>(i)] + z[static_cast<std::size_t>(i)]);
            neg[static_cast<std::size_t>(i)] = -y[static_cast<std::size_t>(i)];
        }
        if (!body.contains(mid)) ++rep.convexity_failures;
        if (!body.contains(neg)) ++rep.symmetry_failures;
    }
    return rep;
}

namespace {

// Calls fn(p) for every p in [-r, r]^n, lexicographic order.
template <class Fn>
void for_each_in_cube(int n, std::int64_t r, Fn&& fn) {
    LatticePoint p{0, 0, 0, 0};
    for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = -r;
    while (true) {
        fn(p);
        int i = n - 1;
        while (i >= 0 && p[static_cast<std::size_t>(i)] == r) {
            p[static_cast<std::size_t>(i)] = -r;
            --i;
        }
        if (i < 0) return;
        ++p[static_cast<std::size_t>(i)];
    }
}

}  // namespace

LatticePointSet enumerate_lattice(const ConvexBody& body, double t) {
    if (!(t > 0.0)) throw std::invalid_argument("enumerate_lattice: t must be positive");
    LatticePointSet out;
    out.t = t;
    out.ambient_dim = body.ambient_dim();
    const auto r = static_cast<std::int64_t>(std::floor(t * body.r_out() * (1.0 + kMembershipSlack)));
    for_each_in_cube(body.ambient_dim(), r, [&](const LatticePoint& p) {
        if (body.contains(p, t)) out.points.push_back(p);
    });
    return out;
}

LatticePointSet shell(const ConvexBody& body, double t1, double t2) {
    if (!(t1 > 0.0) || !(t1 < t2)) throw std::invalid_argument("shell: need 0 < t1 < t2");
    LatticePointSet outer = enumerate_lattice(body, t2);
    LatticePointSet out;
    out.t = t2;
    out.ambient_dim = outer.ambient_dim;
    for (const auto& p : outer.points) {
        if (!body.contains(p, t1)) out.points.push_back(p);
    }
    return out;
}

VolumeEstimate symmetric_difference_volume(const ConvexBody& body, double t, std::span<const double> offset,
                                           std::size_t samples, std::uint64_t seed) {
    if (!(t > 0.0)) throw std::invalid_argument("symmetric_difference_volume: t must be positive");
    const int n = body.ambient_dim();
    if (offset.size() != static_cast<std::size_t>(n)) throw std::invalid_argument("symmetric_difference_volume: offset dimension");
    bool zero = true;
    for (double v : offset) zero = zero && v == 0.0;
    if (zero) return {0.0, 0.0};
    std::vector<double> lo(static_cast<std::size_t>(n)), hi(static_cast<std::size_t>(n));
    double box_volume = 1.0;
    const double R = t * body.r_out();
    for (int i = 0; i < n; ++i) {
        lo[static_cast<std::size_t>(i)] = -R + std::min(0.0, offset[static_cast<std::size_t>(i)]);
        hi[static_cast<std::size_t>(i)] = R + std::max(0.0, offset[static_cast<std::size_t>(i)]);
        box_volume *= hi[static_cast<std::size_t>(i)] - lo[static_cast<std::size_t>(i)];
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<double> y(static_cast<std::size_t>(n)), shifted(static_cast<std::size_t>(n));
    std::size_t hits = 0;
    for (std::size_t s = 0; s < samples; ++s) {
        for (int i = 0; i < n; ++i) {
            const auto k = static_cast<std::size_t>(i);
            y[k] = lo[k] + (hi[k] - lo[k]) * unif(rng);
            shifted[k] = y[k] - offset[k];
        }
        if (body.contains(y, t) != body.contains(shifted, t)) ++hits;
    }
    const double p = static_cast<double>(hits) / static_cast<double>(samples);
    return {box_volume * p, box_volume * std::sqrt(p * (1.0 - p) / static_cast<double>(samples))};
}

BoundaryCubeCount boundary_cube_count(const ConvexBody& body, int k, int n) {
    if (n > k) throw std::invalid_argument("boundary_cube_count: need n <= k");
    const int dim = body.ambient_dim();
    const double t = std::ldexp(1.0, k);
    const double side = std::ldexp(1.0, n);
    const auto reach = static_cast<std::int64_t>(std::ceil(t * body.r_out() / side)) + 1;
    const int sub = dim == 2 ? 4 : 2;
    BoundaryCubeCount out;
    std::vector<double> y(static_cast<std::size_t>(dim));
    // Cube index c covers [c*side, (c+1)*side) in every axis.
    for_each_in_cube(dim, reach, [&](const LatticePoint& c) {
        bool any_in = false, any_out = false;
        for_each_in_cube(dim, sub / 2, [&](const LatticePoint& s) {
            if (any_in && any_out) return;
            for (int i = 0; i < dim; ++i) {
                const auto k2 = static_cast<std::size_t>(i);
                y[k2] = (static_cast<double>(c[k2]) + static_cast<double>(s[k2] + sub / 2) / sub) * side;
            }
            if (body.contains(y, t)) any_in = true;
            else any_out = true;
        });
        if (any_in && any_out) ++out.count;
    });
    out.constant = static_cast<double>(out.count) / std::ldexp(1.0, (dim - 1) * (k - n));
    return out;
}

}  // namespace bilvar
