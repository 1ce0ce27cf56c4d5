#include "bilvar/counterexample.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <functional>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "bilvar/variation.hpp"

namespace bilvar {

namespace {

using std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

struct Radial {
    double lo;  // |v| > lo
    double hi;  // |v| <= hi
};

// Antiderivative of sqrt(1 - u^2).
double semicircle_primitive(double u) {
    u = std::clamp(u, -1.0, 1.0);
    return 0.5 * (u * std::sqrt(1.0 - u * u) + std::asin(u));
}

// Integral over [p, q] in [-1, 1] of |[-s(u), s(u)] ∩ [a, b]|, s = sqrt(1 - u^2).
double chord_integral(double p, double q, double a, double b) {
    p = std::max(p, -1.0);
    q = std::min(q, 1.0);
    if (!(p < q) || !(a < b)) return 0.0;
    std::vector<double> cuts{p, q};
    for (double c : {a, b}) {
        if (std::abs(c) < 1.0) {
            const double u = std::sqrt(1.0 - c * c);
            for (double v : {-u, u})
                if (v > p && v < q) cuts.push_back(v);
        }
    }
    std::sort(cuts.begin(), cuts.end());
    double total = 0.0;
    for (std::size_t k = 1; k < cuts.size(); ++k) {
        const double l = cuts[k - 1], r = cuts[k];
        if (!(r > l)) continue;
        const double m = 0.5 * (l + r);
        const double s = std::sqrt(1.0 - m * m);
        const bool hi_is_s = s < b;
        const bool lo_is_s = -s > a;
        const double hi_m = hi_is_s ? s : b;
        const double lo_m = lo_is_s ? -s : a;
        if (hi_m <= lo_m) continue;
        const double ds = semicircle_primitive(r) - semicircle_primitive(l);
        const double hi_int = hi_is_s ? ds : b * (r - l);
        const double lo_int = lo_is_s ? -ds : a * (r - l);
        total += hi_int - lo_int;
    }
    return total;
}

// Intersection area of disks of radii r1, r2 at distance dist.
double lens_area(double r1, double r2, double dist) {
    if (r1 <= 0.0 || r2 <= 0.0) return 0.0;
    if (!std::isfinite(r2)) return pi * r1 * r1;
    if (dist >= r1 + r2) return 0.0;
    if (dist <= std::abs(r1 - r2)) {
        const double r = std::min(r1, r2);
        return pi * r * r;
    }
    const double c1 = std::clamp((dist * dist + r1 * r1 - r2 * r2) / (2.0 * dist * r1), -1.0, 1.0);
    const double c2 = std::clamp((dist * dist + r2 * r2 - r1 * r1) / (2.0 * dist * r2), -1.0, 1.0);
    const double k = (-dist + r1 + r2) * (dist + r1 - r2) * (dist - r1 + r2) * (dist + r1 + r2);
    return r1 * r1 * std::acos(c1) + r2 * r2 * std::acos(c2) - 0.5 * std::sqrt(std::max(k, 0.0));
}

double integrate(const std::function<double(double)>& f, double a, double b) {
    if (!(b > a)) return 0.0;
    return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 10, 1e-10);
}

// A_r(1_E, 1_{B_{rf}})(x) for the unit ball G of R^{2d}, E radial.
double radial_average(int d, const std::vector<Radial>& e, double rf, double r, std::span<const double> x) {
    if (d == 1) {
        const double x0 = x[0];
        const double a = (-rf - x0) / r, b = (rf - x0) / r;
        double total = 0.0;
        for (const Radial& seg : e) {
            // v in (lo, hi] and v in [-hi, -lo), with v = x + r u.
            total += chord_integral((seg.lo - x0) / r, (seg.hi - x0) / r, a, b);
            total += chord_integral((-seg.hi - x0) / r, (-seg.lo - x0) / r, a, b);
        }
        return total / pi;
    }
    if (d != 2) throw std::invalid_argument("counterexample: d must be 1 or 2");
    const double xn = std::hypot(x[0], x[1]);
    const double ball = 0.5 * pi * pi;
    const auto inner = [&](double dist_sq) {
        const double u2 = dist_sq / (r * r);
        if (u2 >= 1.0) return 0.0;
        return lens_area(std::sqrt(1.0 - u2), rf / r, xn / r);
    };
    double total = 0.0;
    for (const Radial& seg : e) {
        const double lo = std::max(seg.lo, 0.0);
        const double hi = std::min(seg.hi, r + xn);
        if (!(hi > lo)) continue;
        if (xn == 0.0) {
            total += 2.0 * pi * integrate([&](double rho) { return inner(rho * rho) * rho; }, lo, hi);
            continue;
        }
        std::vector<double> cuts{lo, hi};
        for (double c : {r - xn, r + xn})
            if (c > lo && c < hi) cuts.push_back(c);
        std::sort(cuts.begin(), cuts.end());
        for (std::size_t k = 1; k < cuts.size(); ++k) {
            total += integrate(
                [&](double rho) {
                    // phi measured from the direction of x; symmetric in phi.
                    const double c = (rho * rho + xn * xn - r * r) / (2.0 * rho * xn);
                    // inside the ball iff cos(phi) >= c
                    const double phi_max = c <= -1.0 ? pi : (c >= 1.0 ? 0.0 : std::acos(c));
                    const auto g = [&](double phi) {
                        return inner(rho * rho + xn * xn - 2.0 * rho * xn * std::cos(phi));
                    };
                    return 2.0 * rho * integrate(g, 0.0, phi_max);
                },
                cuts[k - 1], cuts[k]);
        }
    }
    return total / (r * r) / ball;
}

}  // namespace

double outside_fraction_closed(int d, double alpha) {
    if (!(alpha > 1.0)) return 0.0;
    if (d == 1) return 1.0 - 2.0 * (std::sqrt(alpha * alpha - 1.0) + alpha * alpha * std::asin(1.0 / alpha)) / (pi * alpha * alpha);
    if (d == 2) return 1.0 - 2.0 * (alpha * alpha - 0.5) / std::pow(alpha, 4);
    throw std::invalid_argument("outside_fraction_closed: d must be 1 or 2");
}

double outside_fraction_quadrature(int d, double alpha, std::span<const double> x) {
    return radial_average(d, {{1.0, kInf}}, kInf, alpha, x);
}

std::vector<std::vector<double>> probe_points(int d, double eps0) {
    std::vector<std::vector<double>> out;
    if (d == 1) {
        for (int k = 0; k < 9; ++k) out.push_back({eps0 * (-0.95 + 0.2375 * k)});
    } else {
        for (int a = -1; a <= 1; ++a)
            for (int b = -1; b <= 1; ++b) out.push_back({0.7 * eps0 * a, 0.7 * eps0 * b});
    }
    return out;
}

GrowthRatio find_growth_ratio(int d) {
    if (d != 1 && d != 2) throw std::invalid_argument("find_growth_ratio: d must be 1 or 2");
    GrowthRatio g;
    for (int k = 1; k <= 99900; ++k) {
        const double a = 1.0 + 0.01 * k;
        const double f = outside_fraction_closed(d, a);
        if (f > 0.8) {
            g.alpha = a;
            g.fraction = f;
            break;
        }
    }
    if (g.alpha == 0.0) throw std::runtime_error("find_growth_ratio: no ratio below 1000");
    const std::vector<double> origin(static_cast<std::size_t>(d), 0.0);
    g.quadrature = outside_fraction_quadrature(d, g.alpha, origin);
    for (double eps = 1.0; eps > 1e-12; eps *= 0.5) {
        const CounterexampleInstance probe{d, g.alpha, 1, eps};
        double worst = 1.0;
        for (const auto& pt : probe_points(d, eps)) {
            for (int i = 1; i <= 3; ++i) {
                const double a = counterexample_average(probe, i, pt);
                worst = std::min(worst, i % 2 ? a - 0.75 : 0.25 - a);
            }
        }
        if (worst >= 0.02) {
            g.eps0 = eps;
            g.probe_margin = worst;
            return g;
        }
    }
    throw std::runtime_error("find_growth_ratio: no admissible eps0");
}

double CounterexampleInstance::annulus_inner(int i) const { return std::pow(alpha, 2 * i); }
double CounterexampleInstance::annulus_outer(int i) const { return std::pow(alpha, 2 * i + 1); }
double CounterexampleInstance::f_radius() const { return std::pow(alpha, 2 * n + 2); }

CounterexampleInstance make_counterexample(int d, int n) {
    if (n < 0) throw std::invalid_argument("make_counterexample: n must be nonnegative");
    if (d != 1 && d != 2) throw std::invalid_argument("make_counterexample: d must be 1 or 2");
    // the search is deterministic; do it once per dimension
    if (d == 1) {
        static const GrowthRatio g = find_growth_ratio(1);
        return {d, g.alpha, n, g.eps0};
    }
    static const GrowthRatio g = find_growth_ratio(2);
    return {d, g.alpha, n, g.eps0};
}

double counterexample_average(const CounterexampleInstance& inst, int i, std::span<const double> x) {
    if (x.size() != static_cast<std::size_t>(inst.d)) throw std::invalid_argument("counterexample_average: dimension");
    std::vector<Radial> e;
    for (int k = 0; k <= inst.n; ++k) e.push_back({inst.annulus_inner(k), inst.annulus_outer(k)});
    return radial_average(inst.d, e, inst.f_radius(), std::pow(inst.alpha, i), x);
}

std::vector<AlternationRow> alternation_table(const CounterexampleInstance& inst) {
    std::vector<AlternationRow> rows;
    for (const auto& pt : probe_points(inst.d, inst.eps0)) {
        for (int i = 1; i <= 2 * inst.n + 1; ++i) {
            AlternationRow row;
            row.n = inst.n;
            row.i = i;
            row.scale = std::pow(inst.alpha, i);
            row.average = counterexample_average(inst, i, pt);
            row.threshold = i % 2 ? 0.75 : 0.25;
            row.pass = i % 2 ? row.average > 0.75 : row.average < 0.25;
            rows.push_back(row);
        }
    }
    return rows;
}

CounterexampleVariation counterexample_variation(const CounterexampleInstance& inst, double q) {
    CounterexampleVariation out;
    out.stated_bound = std::pow(2.0, 1.0 - q) * inst.n;
    out.derived_bound = std::pow(inst.n * std::pow(2.0, 1.0 - q), 1.0 / q);
    if (inst.n == 0) return out;
    const std::vector<double> origin(static_cast<std::size_t>(inst.d), 0.0);
    std::vector<double> seq;
    for (int i = 1; i <= 2 * inst.n + 1; ++i) seq.push_back(counterexample_average(inst, i, origin));
    out.value = vq_exact(seq, q).value;
    out.meets_derived = out.value >= out.derived_bound;
    return out;
}

}  // namespace bilvar
