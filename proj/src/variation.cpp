#include "bilvar/variation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace bilvar {

namespace {

constexpr double kTol = 1e-12;

bool leq(double lhs, double rhs) { return lhs <= rhs * (1.0 + kTol) + kTol; }

void check_q(double q) {
    if (!(q > 1.0) || q > 16.0) throw std::invalid_argument("variation: q must lie in (1, 16]");
}

double sup_abs(std::span<const double> a) {
    double m = 0.0;
    for (double v : a) m = std::max(m, std::abs(v));
    return m;
}

}  // namespace

double vq_power(double x, double q) {
    x = std::abs(x);
    if (x == 0.0) return 0.0;
    return q > 8.0 ? std::exp(q * std::log(x)) : std::pow(x, q);
}

VariationOutcome vq_exact(std::span<const double> a, double q) {
    check_q(q);
    VariationOutcome out;
    out.q = q;
    const std::size_t m = a.size();
    if (m < 2) {
        if (m == 1) out.witness = {0};
        return out;
    }
    std::vector<double> best(m, 0.0);
    std::vector<std::size_t> pred(m, m);
    for (std::size_t j = 1; j < m; ++j) {
        for (std::size_t i = 0; i < j; ++i) {
            const double cand = best[i] + vq_power(a[j] - a[i], q);
            if (cand > best[j]) {
                best[j] = cand;
                pred[j] = i;
            }
        }
    }
    std::size_t end = 0;
    for (std::size_t j = 1; j < m; ++j)
        if (best[j] > best[end]) end = j;
    out.value = std::pow(best[end], 1.0 / q);
    for (std::size_t j = end; j != m; j = pred[j]) out.witness.push_back(j);
    std::reverse(out.witness.begin(), out.witness.end());
    return out;
}

double vq_exhaustive(std::span<const double> a, double q) {
    check_q(q);
    if (a.size() > 24) throw std::invalid_argument("vq_exhaustive: sequence too long");
    const std::size_t m = a.size();
    double best = 0.0;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << m); ++mask) {
        double s = 0.0;
        std::size_t prev = m;
        for (std::size_t i = 0; i < m; ++i) {
            if (!((mask >> i) & 1)) continue;
            if (prev != m) s += vq_power(a[i] - a[prev], q);
            prev = i;
        }
        best = std::max(best, s);
    }
    return std::pow(best, 1.0 / q);
}

double variation_sum(std::span<const double> a, std::span<const std::size_t> witness, double q) {
    double s = 0.0;
    for (std::size_t k = 1; k < witness.size(); ++k) s += vq_power(a[witness[k]] - a[witness[k - 1]], q);
    return s;
}

LongVariation long_variation(std::span<const double> a, const TimeGrid& grid, double q) {
    if (a.size() != grid.size()) throw std::invalid_argument("long_variation: length mismatch");
    LongVariation out;
    if (grid.anchors().empty()) {
        out.no_anchors = true;
        return out;
    }
    std::vector<double> sub;
    sub.reserve(grid.anchors().size());
    for (std::size_t i : grid.anchors()) sub.push_back(a[i]);
    out.value = vq_exact(sub, q).value;
    return out;
}

int short_block(double t) {
    int e = 0;
    const double m = std::frexp(t, &e);
    return m == 0.5 ? e - 2 : e - 1;
}

double short_variation(std::span<const double> a, const TimeGrid& grid, double q) {
    if (a.size() != grid.size()) throw std::invalid_argument("short_variation: length mismatch");
    check_q(q);
    double total = 0.0;
    std::size_t start = 0;
    const auto& t = grid.times();
    while (start < t.size()) {
        std::size_t stop = start + 1;
        while (stop < t.size() && short_block(t[stop]) == short_block(t[start])) ++stop;
        const double v = vq_exact(a.subspan(start, stop - start), q).value;
        total += vq_power(v, q);
        start = stop;
    }
    return std::pow(total, 1.0 / q);
}

InequalityReport product_rule_check(std::span<const double> a, std::span<const double> b, double q) {
    if (a.size() != b.size()) throw std::invalid_argument("product_rule_check: length mismatch");
    std::vector<double> ab(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) ab[i] = a[i] * b[i];
    InequalityReport r;
    r.lhs = vq_exact(ab, q).value;
    r.rhs = sup_abs(a) * vq_exact(b, q).value + sup_abs(b) * vq_exact(a, q).value;
    r.holds = leq(r.lhs, r.rhs);
    return r;
}

InequalityReport sup_vs_variation_check(std::span<const double> a, double q, std::size_t t0) {
    if (t0 >= a.size()) throw std::invalid_argument("sup_vs_variation_check: t0 out of range");
    InequalityReport r;
    r.lhs = sup_abs(a);
    r.rhs = std::abs(a[t0]) + 2.0 * vq_exact(a, q).value;
    r.holds = leq(r.lhs, r.rhs);
    return r;
}

SplitReport split_domination_check(std::span<const double> a, const TimeGrid& grid, double q) {
    SplitReport r;
    r.full = vq_exact(a, q).value;
    r.long_part = long_variation(a, grid, q).value;
    r.short_part = short_variation(a, grid, q);
    r.complete = grid.dyadically_complete();
    r.holds = leq(r.full, r.long_part + 2.0 * r.short_part);
    return r;
}

}  // namespace bilvar
