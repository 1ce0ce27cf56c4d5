#include "bilvar/square_function.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bilvar/averaging.hpp"
#include "bilvar/dyadic.hpp"
#include "bilvar/martingale.hpp"
#include "bilvar/parallel.hpp"
#include "bilvar/variation.hpp"

namespace bilvar {

namespace {

void check_args(const ConvexBody& body, int k) {
    if (!body.normalized()) throw std::invalid_argument("square_function: body must be normalized");
    if (k < 0) throw std::invalid_argument("square_function: k must be nonnegative");
}

double max_abs_on(const Field& f) { return f.max_abs(); }

}  // namespace

Box square_box(const Box& support, const ConvexBody& body, int k_max) {
    const std::int64_t reach = reach_cells(body, std::ldexp(1.0, k_max), AvgMode::lattice_counting, 1.0);
    return dyadic_hull(support.expanded(reach), k_max);
}

Field square_piece_on(const Field& f1, const Field& f2, const ConvexBody& body, int k, const Box& box) {
    check_args(body, k);
    const AvgRequest req{body, std::ldexp(1.0, k), f1, f2, AvgMode::lattice_counting};
    const Field avg = avg_field(req, box);
    const Field prod = cond_expect(f1, k) * cond_expect(f2, k);
    return avg - prod.embedded(box);
}

Field square_piece(const Field& f1, const Field& f2, const ConvexBody& body, int k) {
    return square_piece_on(f1, f2, body, k, square_box(f1.box().united(f2.box()), body, k));
}

SquarePieces square_function(const Field& f1, const Field& f2, const ConvexBody& body, int k_min, int k_max) {
    if (k_min > k_max) throw std::invalid_argument("square_function: empty k range");
    check_args(body, k_min);
    const Box box = square_box(f1.box().united(f2.box()), body, k_max);
    SquarePieces out;
    out.k_min = k_min;
    out.k_max = k_max;
    out.pieces.resize(static_cast<std::size_t>(k_max - k_min + 1));
    for (int k = k_min; k <= k_max; ++k)
        out.pieces[static_cast<std::size_t>(k - k_min)] = square_piece_on(f1, f2, body, k, box);
    out.aggregate = Field(box);
    for (std::size_t i = 0; i < box.size(); ++i) {
        double s = 0.0;
        for (const auto& p : out.pieces) s += p[i] * p[i];
        out.aggregate[i] = std::sqrt(s);
    }
    out.tail = max_abs_on(square_piece(f1, f2, body, k_max + 1));
    return out;
}

SquarePieces square_function(const Field& f1, const Field& f2, const ConvexBody& body) {
    const Box u = f1.box().united(f2.box());
    const auto s1 = f1.support(), s2 = f2.support();
    int top = 0;
    if (s1 && s2) top = covering_level(s1->united(*s2)) + 1;
    else top = top_level(u);
    return square_function(f1, f2, body, 0, top);
}

TelescopeReport paraproduct_telescope(const Field& f1, const Field& f2, const ConvexBody& body, int k, int l, int j) {
    if (l < 1) throw std::invalid_argument("paraproduct_telescope: l must be at least 1");
    if (l > j) throw std::invalid_argument("paraproduct_telescope: need l <= j");
    check_args(body, k);
    const int top = std::max(j, k);
    const Box inner = dyadic_hull(f1.box().united(f2.box()), top);
    const std::int64_t reach = reach_cells(body, std::ldexp(1.0, k), AvgMode::lattice_counting, 1.0);
    const Box box = dyadic_hull(inner.expanded(reach), top);
    const Field g1 = f1.embedded(inner), g2 = f2.embedded(inner);
    const auto piece = [&](const Field& a, const Field& b) { return square_piece_on(a, b, body, k, box); };

    const Field fine = piece(cond_expect(g1, l - 1), cond_expect(g2, l - 1));
    const Field coarse = piece(cond_expect(g1, j), cond_expect(g2, j));
    Field rhs(box);
    for (int n = l; n <= j; ++n) {
        rhs = rhs + piece(mart_diff(g1, n), cond_expect(g2, n - 1));
        rhs = rhs + piece(cond_expect(g1, n), mart_diff(g2, n));
    }
    const Field lhs = fine - coarse;
    TelescopeReport r;
    r.residual = max_abs_difference(lhs, rhs);
    r.scale = lhs.max_abs();
    r.fine_boundary = fine.max_abs();
    r.coarse_boundary = coarse.max_abs();
    return r;
}

LongDominationReport long_variation_domination(const Field& f1, const Field& f2, const ConvexBody& body, int k_min,
                                               int k_max, double q) {
    if (q < 2.0) throw std::invalid_argument("long_variation_domination: q must be at least 2");
    const SquarePieces sq = square_function(f1, f2, body, k_min, k_max);
    const Box& box = sq.aggregate.box();
    std::vector<Field> avgs, prods;
    for (int k = k_min; k <= k_max; ++k) {
        const AvgRequest req{body, std::ldexp(1.0, k), f1, f2, AvgMode::lattice_counting};
        avgs.push_back(avg_field(req, box));
        prods.push_back((cond_expect(f1, k) * cond_expect(f2, k)).embedded(box));
    }
    std::vector<double> excess(box.size());
    parallel_for(box.size(), [&](std::size_t i) {
        std::vector<double> a, p;
        for (std::size_t k = 0; k < avgs.size(); ++k) {
            a.push_back(avgs[k][i]);
            p.push_back(prods[k][i]);
        }
        const double lhs = vq_exact(a, q).value;
        const double rhs = 2.0 * sq.aggregate[i] + vq_exact(p, q).value;
        excess[i] = lhs - rhs;
    });
    LongDominationReport r;
    r.points = box.size();
    r.max_excess = -INFINITY;
    double scale = std::max(f1.max_abs() * f2.max_abs(), 1e-300);
    for (double e : excess) {
        if (e > 1e-12 * scale) ++r.violations;
        r.max_excess = std::max(r.max_excess, e);
    }
    return r;
}

}  // namespace bilvar
