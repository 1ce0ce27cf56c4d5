#include "bilvar/cz.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bilvar {

namespace {

constexpr int kMaxTopLevel = 40;
constexpr double kRel = 1e-12;

double mean_power(const Field& f, const Box& cube, double p) {
    double s = 0.0;
    for (std::size_t i = 0; i < cube.size(); ++i) s += std::pow(std::abs(f.at(cube.coord_of(i))), p);
    return s / static_cast<double>(cube.size());
}

}  // namespace

CZOutput cz_decompose(const Field& f, double p_i, double alpha, double p) {
    if (!(alpha > 0.0)) throw std::invalid_argument("cz_decompose: alpha must be positive");
    if (!(p_i >= 1.0) || !std::isfinite(p_i)) throw std::invalid_argument("cz_decompose: p_i must lie in [1, inf)");
    if (!(p > 0.0)) throw std::invalid_argument("cz_decompose: p must be positive");
    const auto supp = f.support();
    if (!supp) throw std::invalid_argument("cz_decompose: zero field");
    const int d = f.box().dim();
    const double mesh = f.box().mesh();
    const double threshold = std::pow(alpha, p);
    const Field power = f.map([&](double v) { return std::pow(std::abs(v), p_i); });

    CZOutput out;
    out.p_i = p_i;
    out.alpha = alpha;
    out.p = p;
    int top = covering_level(*supp);
    for (;; ++top) {
        const CubeGrid g = cube_means(power, top);
        const bool above = std::any_of(g.values.begin(), g.values.end(), [&](double v) { return v > threshold; });
        if (!above) break;
        if (top >= kMaxTopLevel) {
            out.flagged = true;
            break;
        }
    }
    out.top_level = top;
    const Box w = dyadic_hull(*supp, top);
    out.f = f.embedded(w);

    std::vector<CubeGrid> means(static_cast<std::size_t>(top + 1));
    const Field pw = power.embedded(w);
    for (int l = 0; l <= top; ++l) means[static_cast<std::size_t>(l)] = cube_means(pw, l);
    const auto mean_of = [&](const DyadicCube& q) {
        const CubeGrid& g = means[static_cast<std::size_t>(q.level)];
        return g.values[g.coarse.index_of(q.index)];
    };

    std::vector<DyadicCube> selected;
    std::vector<DyadicCube> stack;
    if (out.flagged) {
        stack.clear();
        for (const auto& q : cubes_meeting(*supp, top)) selected.push_back(q);
    } else {
        stack = cubes_meeting(*supp, top);
        std::reverse(stack.begin(), stack.end());
    }
    while (!stack.empty()) {
        const DyadicCube q = stack.back();
        stack.pop_back();
        const double m = mean_of(q);
        if (m == 0.0) continue;
        if (m > threshold) {
            selected.push_back(q);
            continue;
        }
        if (q.level == 0) continue;
        std::vector<DyadicCube> kids;
        for (int c = 0; c < (1 << d); ++c) {
            DyadicCube k{q.level - 1, {0, 0, 0}};
            for (int a = 0; a < d; ++a) k.index[static_cast<std::size_t>(a)] = 2 * q.index[static_cast<std::size_t>(a)] + ((c >> (d - 1 - a)) & 1);
            kids.push_back(k);
        }
        for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.push_back(*it);
    }

    out.good = out.f;
    out.bad_total = Field(w);
    for (const auto& q : selected) {
        const Box qb = cube_box(q, d, mesh);
        double avg = 0.0;
        for (std::size_t i = 0; i < qb.size(); ++i) avg += out.f.at(qb.coord_of(i));
        avg /= static_cast<double>(qb.size());
        BadPiece bp{q, Field(qb)};
        for (std::size_t i = 0; i < qb.size(); ++i) {
            const Coord c = qb.coord_of(i);
            const std::size_t wi = w.index_of(c);
            bp.piece[i] = out.f[wi] - avg;
            out.good[wi] = avg;
            out.bad_total[wi] = bp.piece[i];
        }
        out.bad.push_back(std::move(bp));
    }
    return out;
}

bool CZCertificate::ok() const {
    return std::all_of(properties.begin(), properties.end(), [](const CZProperty& p) { return p.ok; });
}

CZCertificate cz_certify(const CZOutput& out) {
    CZCertificate cert;
    const int d = out.f.box().dim();
    const double pi = out.p_i;
    const double thr = std::pow(out.alpha, out.p);
    const double hd = out.f.box().cell_measure();
    const double fmax = out.f.max_abs();
    const double fnorm = lp_norm(out.f, pi);
    const auto add = [&](const std::string& name, double measured, double bound) {
        cert.properties.push_back({name, measured, bound, measured <= bound * (1.0 + kRel) + 1e-300});
    };

    // (i) reconstruction
    Field sum = out.good;
    for (const auto& b : out.bad) sum = sum + b.piece;
    add("reconstruction", max_abs_difference(sum, out.f), kRel * fmax);

    // (ii) the bad part is the sum of its pieces
    Field pieces(out.f.box());
    for (const auto& b : out.bad) pieces = pieces + b.piece;
    add("bad_sum", max_abs_difference(pieces, out.bad_total), kRel * fmax);

    // (iii) support in the cube, cubes with disjoint interiors
    double overlaps = 0.0;
    for (std::size_t a = 0; a < out.bad.size(); ++a) {
        if (!(out.bad[a].piece.box() == cube_box(out.bad[a].cube, d, out.f.box().mesh()))) overlaps += 1.0;
        for (std::size_t b = a + 1; b < out.bad.size(); ++b) {
            DyadicCube lo = out.bad[a].cube, hi = out.bad[b].cube;
            if (lo.level > hi.level) std::swap(lo, hi);
            while (lo.level < hi.level) lo = parent(lo, d);
            if (lo == hi) overlaps += 1.0;
        }
    }
    add("support_disjoint", overlaps, 0.0);

    // (iv) mean zero
    double worst_mean = 0.0;
    for (const auto& b : out.bad) {
        double s = 0.0, a = 0.0;
        for (double v : b.piece.samples()) {
            s += v;
            a += std::abs(v);
        }
        if (a > 0.0) worst_mean = std::max(worst_mean, std::abs(s) / a);
    }
    add("mean_zero", worst_mean, kRel);

    // (v) ||b_j||^p_i <= 2^{d+p_i} alpha^p |Q_j|
    double v_ratio = 0.0;
    for (const auto& b : out.bad) {
        const double n = std::pow(lp_norm(b.piece, pi), pi);
        v_ratio = std::max(v_ratio, n / (thr * static_cast<double>(b.piece.size()) * hd));
    }
    add("piece_norm", v_ratio, std::pow(2.0, d + pi));

    // (vi) sum |Q_j| <= alpha^{-p} ||f||^p_i
    double total = 0.0;
    for (const auto& b : out.bad) total += static_cast<double>(b.piece.size()) * hd;
    add("cube_measure", fnorm > 0.0 ? total * thr / std::pow(fnorm, pi) : 0.0, 1.0);

    // (vii) ||b|| <= 2^{(d+p_i)/p_i} ||f||
    add("bad_norm", fnorm > 0.0 ? lp_norm(out.bad_total, pi) / fnorm : 0.0, std::pow(2.0, (d + pi) / pi));

    // (viii) ||g||_p_i <= ||f||_p_i and ||g||_inf <= 2^{d/p_i} alpha^{p/p_i}
    add("good_norm", fnorm > 0.0 ? lp_norm(out.good, pi) / fnorm : 0.0, 1.0);
    add("good_sup", lp_norm(out.good, INFINITY) / std::pow(out.alpha, out.p / pi), std::pow(2.0, d / pi));

    // maximality: the parent of every selected cube stays at or below threshold
    double parents_over = 0.0;
    for (const auto& b : out.bad) {
        const Box pb = cube_box(parent(b.cube, d), d, out.f.box().mesh());
        if (mean_power(out.f, pb, pi) > thr) parents_over += 1.0;
    }
    add("maximal", parents_over, 0.0);

    // g equals f off the cubes and the cube average on them
    double mismatch = 0.0;
    Field expected = out.f;
    for (const auto& b : out.bad) {
        double avg = 0.0;
        for (std::size_t i = 0; i < b.piece.size(); ++i) avg += out.f.at(b.piece.box().coord_of(i));
        avg /= static_cast<double>(b.piece.size());
        for (std::size_t i = 0; i < b.piece.size(); ++i) expected[out.f.box().index_of(b.piece.box().coord_of(i))] = avg;
    }
    mismatch = max_abs_difference(expected, out.good);
    add("good_values", mismatch, kRel * fmax);
    return cert;
}

}  // namespace bilvar
