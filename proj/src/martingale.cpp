#include "bilvar/martingale.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "bilvar/parallel.hpp"
#include "bilvar/variation.hpp"

namespace bilvar {

Field cond_expect(const Field& f, int j) {
    if (j < 0) throw std::invalid_argument("cond_expect: level below the grid resolution");
    if (j == 0) return f;
    return expand(cube_means(f, j), f.box().dim(), f.box().mesh());
}

Field mart_diff(const Field& f, int j) {
    if (j < 1) throw std::invalid_argument("mart_diff: level must be at least 1");
    const Field coarse = cond_expect(f, j);
    return cond_expect(f, j - 1).embedded(coarse.box()) - coarse;
}

int top_level(const Box& box) {
    std::int64_t side = 1;
    for (int a = 0; a < box.dim(); ++a) side = std::max(side, box.extent()[static_cast<std::size_t>(a)]);
    int j = 0;
    while ((std::int64_t{1} << j) < side) ++j;
    return j + 1;
}

Box working_box(const Box& box, std::int64_t margin, int level) {
    return dyadic_hull(margin > 0 ? box.expanded(margin) : box, level);
}

namespace {

std::string cube_text(const DyadicCube& q, int dim) {
    std::ostringstream os;
    os << "level " << q.level << " index (";
    for (int a = 0; a < dim; ++a) os << (a ? "," : "") << q.index[static_cast<std::size_t>(a)];
    os << ")";
    return os.str();
}

Box fine_of(const Box& coarse, int level, double mesh) {
    Coord o{0, 0, 0}, e{1, 1, 1};
    for (int a = 0; a < coarse.dim(); ++a) {
        o[static_cast<std::size_t>(a)] = coarse.origin()[static_cast<std::size_t>(a)] << level;
        e[static_cast<std::size_t>(a)] = coarse.extent()[static_cast<std::size_t>(a)] << level;
    }
    return Box(coarse.dim(), o, e, mesh);
}

Field pointwise_max(const Field& a, const Field& b) {
    const Box u = a.box().united(b.box());
    const Field ea = a.embedded(u), eb = b.embedded(u);
    Field out(u);
    for (std::size_t i = 0; i < u.size(); ++i) out[i] = std::max(ea[i], eb[i]);
    return out;
}

}  // namespace

NotMeasurable::NotMeasurable(const DyadicCube& cube, const std::string& what)
    : std::invalid_argument(what), cube_(cube) {}

CubeGrid measurable_values(const Field& h, int n) {
    if (n < 1) throw std::invalid_argument("measurable_values: n must be at least 1");
    const int level = n - 1;
    const int d = h.box().dim();
    CubeGrid g;
    g.level = level;
    g.fine = dyadic_hull(h.box(), level);
    Coord co{0, 0, 0}, ce{1, 1, 1};
    for (int a = 0; a < d; ++a) {
        co[static_cast<std::size_t>(a)] = g.fine.origin()[static_cast<std::size_t>(a)] >> level;
        ce[static_cast<std::size_t>(a)] = g.fine.extent()[static_cast<std::size_t>(a)] >> level;
    }
    g.coarse = Box(d, co, ce, 1.0);
    g.values.assign(g.coarse.size(), 0.0);
    std::vector<char> seen(g.coarse.size(), 0);
    const Box fine(d, g.fine.origin(), g.fine.extent(), h.box().mesh());
    const Field e = h.embedded(fine);
    for (std::size_t i = 0; i < e.size(); ++i) {
        const Coord c = fine.coord_of(i);
        const DyadicCube q = cube_containing(c, level, d);
        const std::size_t k = g.coarse.index_of(q.index);
        if (!seen[k]) {
            seen[k] = 1;
            g.values[k] = e[i];
        } else if (e[i] != g.values[k]) {
            throw NotMeasurable(q, "field is not constant on dyadic cube " + cube_text(q, d));
        }
    }
    return g;
}

Field star_maximal(const Field& h, int n) {
    const CubeGrid in = measurable_values(h, n);
    const int d = h.box().dim();
    const Box out_coarse = in.coarse.expanded(1);
    CubeGrid out;
    out.level = in.level;
    out.coarse = out_coarse;
    out.fine = fine_of(out_coarse, in.level, h.box().mesh());
    out.values.assign(out_coarse.size(), 0.0);
    int neighbours = 1;
    for (int a = 0; a < d; ++a) neighbours *= 3;
    for (std::size_t i = 0; i < out_coarse.size(); ++i) {
        const Coord c = out_coarse.coord_of(i);
        double m = 0.0;
        for (int nb = 0; nb < neighbours; ++nb) {
            Coord q = c;
            int rest = nb;
            for (int a = 0; a < d; ++a) {
                q[static_cast<std::size_t>(a)] += rest % 3 - 1;
                rest /= 3;
            }
            if (in.coarse.contains(q)) m = std::max(m, std::abs(in.values[in.coarse.index_of(q)]));
        }
        out.values[i] = m;
    }
    return expand(out, d, h.box().mesh());
}

Field bilinear_maximal(const Field& h1, const Field& h2, int n) {
    const auto absval = [](double v) { return std::abs(v); };
    const Field left = star_maximal(star_maximal(h1, n) * h2.map(absval), n);
    const Field right = star_maximal(h1.map(absval) * star_maximal(h2, n), n);
    return pointwise_max(left, right);
}

DominationReport domination_check(const ConvexBody& body, const Field& h1, const Field& h2, int n, int k) {
    if (!body.normalized()) throw std::invalid_argument("domination_check: body must be normalized");
    if (k < 0 || k >= n) throw std::invalid_argument("domination_check: need 0 <= k < n");
    const Field plus = bilinear_maximal(h1, h2, n);
    const double t = std::ldexp(1.0, k);
    const std::int64_t reach = reach_cells(body, t, AvgMode::lattice_counting, 1.0);
    const Box region = h1.box().united(h2.box()).expanded(reach).united(plus.box());
    const Stencil st = make_stencil(body, t);
    const PairKernel kernel(h1, h2);
    std::vector<double> avg(region.size());
    parallel_for(region.size(), [&](std::size_t i) { avg[i] = std::abs(kernel.average(st, region.coord_of(i))); });
    const double slack = 1e-12 * std::max(h1.max_abs() * h2.max_abs(), 1e-300);
    DominationReport r;
    r.points = region.size();
    r.max_excess = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < region.size(); ++i) {
        const Coord x = region.coord_of(i);
        const double m = plus.at(x);
        const double excess = avg[i] - m;
        if (excess > slack) ++r.violations;
        if (excess > r.max_excess) {
            r.max_excess = excess;
            r.worst = x;
            r.worst_average = avg[i];
            r.worst_maximal = m;
        }
    }
    return r;
}

double carleson_tent_mass(const Field& b, const DyadicCube& q, int n) {
    if (n < 0) throw std::invalid_argument("carleson_tent_mass: n must be nonnegative");
    const int d = b.box().dim();
    const Box qb = cube_box(q, d, b.box().mesh());
    const Box w = dyadic_hull(b.box().united(qb), q.level + 1);
    const Field bw = b.embedded(w);
    double total = 0.0;
    for (int k = n; k <= q.level; ++k) {
        const Field diff = cond_expect(bw, k + 1 - n) - cond_expect(bw, k - n);
        for (std::size_t i = 0; i < qb.size(); ++i) {
            const double v = diff.at(qb.coord_of(i));
            total += v * v;
        }
    }
    return total * b.box().cell_measure();
}

CarlesonReport carleson_sweep(const Field& b, int n) {
    if (n < 0) throw std::invalid_argument("carleson_sweep: n must be nonnegative");
    CarlesonReport r;
    r.n = n;
    const auto supp = b.support();
    if (!supp) return r;
    r.bmo = bmo_dyadic_norm(b);
    if (r.bmo == 0.0) return r;
    const int d = b.box().dim();
    const int top = covering_level(*supp) + 1;
    const Box w = dyadic_hull(*supp, top + 1);
    const Field bw = b.embedded(w);
    // diffs[m] = (E_{m+1} b - E_m b)^2 for m = k - n, k <= top.
    std::vector<Field> diffs;
    for (int m = 0; m + n <= top; ++m) {
        const Field diff = cond_expect(bw, m + 1) - cond_expect(bw, m);
        diffs.push_back(diff * diff);
    }
    const double h_d = b.box().cell_measure();
    r.sup_ratio = 0.0;
    for (int level = 0; level <= top; ++level) {
        const double cube_measure = std::ldexp(1.0, level * d) * h_d;
        std::vector<double> mass;
        Box coarse;
        for (int k = n; k <= level; ++k) {
            const CubeGrid g = cube_means(diffs[static_cast<std::size_t>(k - n)], level);
            if (mass.empty()) {
                mass.assign(g.values.size(), 0.0);
                coarse = g.coarse;
            }
            for (std::size_t i = 0; i < g.values.size(); ++i) mass[i] += g.values[i] * cube_measure;
        }
        for (std::size_t i = 0; i < mass.size(); ++i) {
            const double ratio = mass[i] / (cube_measure * r.bmo * r.bmo);
            if (ratio > r.sup_ratio) {
                r.sup_ratio = ratio;
                r.worst = DyadicCube{level, coarse.coord_of(i)};
            }
        }
    }
    return r;
}

double carleson_weighted_sum(const Field& f, const Field& b, int n, const WeightedSumOptions& opt) {
    if (!(opt.l > 1.0 && opt.l < 2.0)) throw std::invalid_argument("carleson_weighted_sum: l must lie in (1, 2)");
    if (!(opt.epsilon > 0.0)) throw std::invalid_argument("carleson_weighted_sum: epsilon must be positive");
    if (n < 0) throw std::invalid_argument("carleson_weighted_sum: n must be nonnegative");
    if (f.box().mesh() != 1.0 || b.box().mesh() != 1.0) throw std::invalid_argument("carleson_weighted_sum: mesh 1 required");
    const auto sf = f.support();
    const auto sb = b.support();
    if (!sf || !sb) return 0.0;
    const int d = f.box().dim();
    const int top = covering_level(*sb) + 2;
    const Box w = dyadic_hull(*sb, top + 1);
    const Field bw = b.embedded(w);
    const double l = opt.l;

    struct Sparse {
        std::vector<Coord> at;
        std::vector<double> value;
    };
    const auto sparse_of = [&](const Field& g) {
        Sparse s;
        for (std::size_t i = 0; i < g.size(); ++i) {
            if (g[i] == 0.0) continue;
            s.at.push_back(g.box().coord_of(i));
            s.value.push_back(std::pow(std::abs(g[i]), l));
        }
        return s;
    };
    const Sparse fl = sparse_of(f);

    double total = 0.0;
    for (int m = 0; m <= top; ++m) {
        const int k = m + n;
        const Sparse dl = sparse_of(cond_expect(bw, m + 1) - cond_expect(bw, m));
        if (dl.at.empty()) continue;
        const double scale = std::ldexp(1.0, k);
        const double peak = std::ldexp(1.0, -k * d);
        const auto zeta = [&](const Coord& x, const Coord& z) {
            double r2 = 0.0;
            for (int a = 0; a < d; ++a) {
                const double dz = static_cast<double>(x[static_cast<std::size_t>(a)] - z[static_cast<std::size_t>(a)]);
                r2 += dz * dz;
            }
            const double v = peak * std::pow(1.0 + std::sqrt(r2) / scale, -d - opt.epsilon);
            return v < 1e-12 * peak ? 0.0 : v;
        };
        const auto margin = static_cast<std::int64_t>(std::ceil(opt.window * scale));
        const std::int64_t stride = std::max<std::int64_t>(1, std::int64_t{1} << std::max(0, k - 2));
        const Box region = sf->united(w).expanded(margin);
        Coord steps{1, 1, 1};
        for (int a = 0; a < d; ++a)
            steps[static_cast<std::size_t>(a)] = (region.extent()[static_cast<std::size_t>(a)] + stride - 1) / stride;
        const Box sampled(d, {0, 0, 0}, steps, 1.0);
        std::vector<double> part(sampled.size(), 0.0);
        parallel_for(sampled.size(), [&](std::size_t i) {
            const Coord s = sampled.coord_of(i);
            Coord x{0, 0, 0};
            for (int a = 0; a < d; ++a)
                x[static_cast<std::size_t>(a)] = region.origin()[static_cast<std::size_t>(a)] + s[static_cast<std::size_t>(a)] * stride;
            double c1 = 0.0, c2 = 0.0;
            for (std::size_t z = 0; z < fl.at.size(); ++z) c1 += zeta(x, fl.at[z]) * fl.value[z];
            if (c1 == 0.0) return;
            for (std::size_t z = 0; z < dl.at.size(); ++z) c2 += zeta(x, dl.at[z]) * dl.value[z];
            part[i] = std::pow(c1, 2.0 / l) * std::pow(c2, 2.0 / l);
        });
        double level_sum = 0.0;
        for (double v : part) level_sum += v;
        total += level_sum * std::pow(static_cast<double>(stride), d);
    }
    return total;
}

ProductVariationReport martingale_product_variation_check(const Field& f1, const Field& f2, double q) {
    ProductVariationReport r;
    r.rhs = std::min(lp_norm(f1, 2.0) * lp_norm(f2, INFINITY), lp_norm(f1, INFINITY) * lp_norm(f2, 2.0));
    const Box u = f1.box().united(f2.box());
    const int top = top_level(u);
    const Box w = dyadic_hull(u, top);
    const Field e1 = f1.embedded(w), e2 = f2.embedded(w);
    std::vector<Field> products;
    for (int j = 0; j <= top; ++j) products.push_back(cond_expect(e1, j) * cond_expect(e2, j));
    std::vector<double> v2(w.size(), 0.0);
    parallel_for(w.size(), [&](std::size_t i) {
        std::vector<double> seq;
        seq.reserve(products.size() + 1);
        for (const auto& p : products) seq.push_back(p[i]);
        seq.push_back(0.0);
        const double v = vq_exact(seq, q).value;
        v2[i] = v * v;
    });
    double s = 0.0;
    for (double v : v2) s += v;
    r.lhs = std::sqrt(s * w.cell_measure());
    r.ratio = r.rhs > 0.0 ? r.lhs / r.rhs : 0.0;
    return r;
}

std::vector<double> convolve(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) return {};
    std::vector<double> out(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

YoungReport young_convolution_check(std::span<const double> a, std::span<const double> sigma) {
    for (double v : a)
        if (v < 0.0) throw std::invalid_argument("young_convolution_check: a must be nonnegative");
    for (double v : sigma)
        if (v < 0.0) throw std::invalid_argument("young_convolution_check: sigma must be nonnegative");
    const std::vector<double> c = convolve(a, sigma);
    double c2 = 0.0, a2 = 0.0, w = 0.0;
    for (double v : c) c2 += v * v;
    for (double v : a) a2 += v * v;
    for (double v : sigma) w += v;
    YoungReport r;
    r.squared_lhs = c2;
    r.lhs = std::sqrt(c2);
    r.young_rhs = w * std::sqrt(a2);
    r.holds = r.lhs <= r.young_rhs * (1.0 + 1e-12);
    r.w_bound = w * a2;
    r.w2_bound = w * w * a2;
    return r;
}

}  // namespace bilvar
