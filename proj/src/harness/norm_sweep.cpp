#include <algorithm>
#include <cmath>
#include <random>

#include "bilvar/averaging.hpp"
#include "bilvar/harness/generators.hpp"
#include "bilvar/harness/suites.hpp"
#include "bilvar/parallel.hpp"
#include "bilvar/variation.hpp"

namespace bilvar::harness {

ConvexBody make_body(const ExperimentConfig& cfg) {
    if (cfg.body == "cube") return normalize(ConvexBody::cube(cfg.d));
    if (cfg.body == "gamma") return normalize(ConvexBody::gamma(cfg.d, cfg.gamma));
    return normalize(ConvexBody::ball(cfg.d));
}

namespace {

double variation_norm(const Field& v, const ExperimentConfig& cfg) {
    if (cfg.norm == "weak") return weak_lp_quasinorm(v, cfg.p);
    if (cfg.norm == "bmo") return bmo_dyadic_norm(v);
    return lp_norm(v, cfg.p);
}

TrialRatio one_ratio(const ExperimentConfig& cfg, const ConvexBody& body, const TimeGrid& times,
                     const RandomFunction& g1, const RandomFunction& g2, int grid) {
    const Field f1 = g1.sample(grid);
    const Field f2 = g2.sample(grid);
    const double h = 1.0 / grid;
    const std::int64_t reach = reach_cells(body, times.times().back(), AvgMode::continuum_quadrature, h);
    const Box region = f1.box().united(f2.box()).expanded(reach);
    const auto avgs = avg_field_sweep(body, times, f1, f2, region, AvgMode::continuum_quadrature);
    Field v(region);
    std::vector<double> seq(times.size());
    for (std::size_t i = 0; i < region.size(); ++i) {
        for (std::size_t k = 0; k < times.size(); ++k) seq[k] = avgs[k][i];
        v[i] = vq_exact(seq, cfg.q).value;
    }
    TrialRatio r;
    r.grid = grid;
    r.numerator = variation_norm(v, cfg);
    r.denominator = lp_norm(f1, cfg.p1) * lp_norm(f2, cfg.p2);
    r.ratio = r.denominator > 0.0 ? r.numerator / r.denominator : 0.0;
    return r;
}

}  // namespace

RatioReport run_norm_sweep(const ExperimentConfig& cfg) {
    const ConvexBody body = make_body(cfg);
    const TimeGrid times = TimeGrid::geometric(cfg.k_min, cfg.k_max, cfg.per_octave);
    const std::size_t grids = cfg.grids.size();
    const auto trials = static_cast<std::size_t>(cfg.trials);

    RatioReport rep;
    rep.suite = cfg.suite;
    rep.trials.resize(trials * grids);
    parallel_for(trials * grids, [&](std::size_t idx) {
        const std::size_t t = idx / grids, g = idx % grids;
        std::mt19937_64 rng(derive_seed(cfg.seed, t));
        const Family fam = pick_family(cfg.families, t);
        const RandomFunction g1(fam, cfg.d, rng);
        const RandomFunction g2(fam, cfg.d, rng);
        TrialRatio r = one_ratio(cfg, body, times, g1, g2, cfg.grids[g]);
        r.trial = static_cast<int>(t);
        r.family = to_string(fam);
        rep.trials[idx] = r;
    });

    double sum = 0.0;
    for (const auto& r : rep.trials) {
        rep.max = std::max(rep.max, r.ratio);
        sum += r.ratio;
    }
    rep.mean = sum / static_cast<double>(rep.trials.size());
    for (std::size_t g = 0; g < grids; ++g) {
        GridSummary s;
        s.grid = cfg.grids[g];
        double total = 0.0;
        for (std::size_t t = 0; t < trials; ++t) {
            const double r = rep.trials[t * grids + g].ratio;
            s.max = std::max(s.max, r);
            total += r;
        }
        s.mean = total / static_cast<double>(trials);
        rep.per_grid.push_back(s);
    }
    double hi = 0.0, lo = INFINITY;
    for (const auto& s : rep.per_grid) {
        hi = std::max(hi, s.max);
        lo = std::min(lo, s.max);
    }
    rep.trend = lo > 0.0 ? hi / lo - 1.0 : 0.0;
    rep.stable = rep.trend < cfg.trend_limit;
    rep.ceiling = cfg.ceiling;
    rep.within_ceiling = cfg.ceiling <= 0.0 || rep.max <= cfg.ceiling;
    return rep;
}

}  // namespace bilvar::harness
