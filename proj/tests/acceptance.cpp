// One PASS/FAIL line per acceptance criterion. Tolerances and sizes are fixed
// here; the exit status is nonzero if any criterion fails.
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <mutex>
#include <random>
#include <string>
#include <vector>

#include "bilvar/averaging.hpp"
#include "bilvar/convex_body.hpp"
#include "bilvar/counterexample.hpp"
#include "bilvar/cz.hpp"
#include "bilvar/harness/config.hpp"
#include "bilvar/harness/generators.hpp"
#include "bilvar/harness/suites.hpp"
#include "bilvar/interpolation.hpp"
#include "bilvar/martingale.hpp"
#include "bilvar/parallel.hpp"
#include "bilvar/square_function.hpp"
#include "bilvar/variation.hpp"
#include "support.hpp"

using namespace bilvar;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

int failures = 0;

void criterion(int id, const char* name, const std::function<Outcome()>& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = fn();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass) ++failures;
    std::printf("%s  %2d %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str(), secs);
    std::fflush(stdout);
}

double elapsed(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

std::vector<double> random_sequence(std::mt19937_64& rng, std::size_t m) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> a(m);
    for (double& x : a) x = u(rng);
    return a;
}

ConvexBody random_body(std::mt19937_64& rng) {
    switch (rng() % 3) {
        case 0: return normalize(ConvexBody::ball(1));
        case 1: return normalize(ConvexBody::cube(1));
        default: {
            std::uniform_real_distribution<double> u(-0.4, 0.4);
            return normalize(ConvexBody::gamma(1, {1 + u(rng), u(rng), u(rng), 1 + u(rng)}));
        }
    }
}

// 1. DP against exhaustive enumeration.
Outcome variation_oracle() {
    constexpr int kTrials = 10000;
    constexpr double kSeconds = 10.0;
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(101);
    int mismatches = 0;
    for (int i = 0; i < kTrials; ++i) {
        const auto a = random_sequence(rng, 1 + rng() % 12);
        const double q = std::array<double, 4>{1.5, 2.0, 3.0, 4.5}[i % 4];
        if (vq_exact(a, q).value != testing_support::exhaustive_variation(a, q)) ++mismatches;
    }
    const double s = elapsed(t0);
    return {mismatches == 0 && s < kSeconds, fmt("%d mismatches in %d sequences, %.2f s (limit %.0f s)", mismatches, kTrials, s, kSeconds)};
}

// 2. Telescoping identity.
Outcome telescoping() {
    constexpr int kTrials = 100;
    constexpr double kTol = 1e-10, kSeconds = 60.0;
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<double> resid(kTrials);
    parallel_for(kTrials, [&](std::size_t i) {
        std::mt19937_64 rng(derive_seed(102, i));
        const ConvexBody body = random_body(rng);
        const Field f1 = harness::uniform_field(rng, Box::line(0, 64));
        const Field f2 = harness::uniform_field(rng, Box::line(0, 64));
        const int k = static_cast<int>(rng() % 6);
        const int l = 1 + static_cast<int>(rng() % 3);
        const int j = l + static_cast<int>(rng() % 5);
        resid[i] = paraproduct_telescope(f1, f2, body, k, l, j).residual;
    });
    const double worst = *std::max_element(resid.begin(), resid.end());
    const double s = elapsed(t0);
    return {worst < kTol && s < kSeconds, fmt("max residual %.3g (tol %.0e) over %d instances, %.2f s", worst, kTol, kTrials, s)};
}

// 3. Domination by the bilinear maximal function, 0 <= k < n.
Outcome domination() {
    constexpr int kTrials = 1000;
    std::vector<DominationReport> reps(kTrials);
    std::vector<int> ns(kTrials), ks(kTrials);
    const ConvexBody body = normalize(ConvexBody::ball(1));
    parallel_for(kTrials, [&](std::size_t i) {
        std::mt19937_64 rng(derive_seed(103, i));
        const int n = 1 + static_cast<int>(rng() % 4);
        const int k = static_cast<int>(rng() % static_cast<unsigned>(n));
        const double density = std::uniform_real_distribution<double>(0.2, 0.9)(rng);
        const Field h1 = harness::step_field(rng, 1, n, 8, density);
        const Field h2 = harness::step_field(rng, 1, n, 8, density);
        reps[i] = domination_check(body, h1, h2, n, k);
        ns[i] = n;
        ks[i] = k;
    });
    std::size_t points = 0, violations = 0, bad = 0, bad_top = 0, low_bad = 0;
    double excess = 0.0;
    for (int i = 0; i < kTrials; ++i) {
        points += reps[i].points;
        violations += reps[i].violations;
        excess = std::max(excess, reps[i].max_excess);
        if (reps[i].violations) {
            ++bad;
            if (ks[i] == ns[i] - 1) ++bad_top;
            else ++low_bad;
        }
    }
    return {violations == 0,
            fmt("%zu violations at %zu points; %zu of %d instances fail (%zu with k = n - 1, %zu with k <= n - 2); max excess %.3g",
                violations, points, bad, kTrials, bad_top, low_bad, excess)};
}

// 4. Finite ratio of the squared maximal function to |h1 h2|^2.
Outcome maximal_square() {
    constexpr int kTrials = 10000;
    std::vector<double> ratio(kTrials);
    parallel_for(kTrials, [&](std::size_t i) {
        std::mt19937_64 rng(derive_seed(104, i));
        const int n = 1 + static_cast<int>(rng() % 4);
        const double density = std::uniform_real_distribution<double>(0.2, 0.9)(rng);
        const Field h1 = harness::step_field(rng, 1, n, 8, density);
        const Field h2 = harness::step_field(rng, 1, n, 8, density);
        const double lhs = std::pow(lp_norm(bilinear_maximal(h1, h2, n), 2.0), 2.0);
        const double rhs = std::pow(lp_norm(h1 * h2, 2.0), 2.0);
        ratio[i] = rhs > 0.0 ? lhs / rhs : (lhs > 0.0 ? INFINITY : 0.0);
    });
    double sup = 0.0;
    int infinite = 0;
    for (double r : ratio) {
        if (std::isfinite(r)) sup = std::max(sup, r);
        else ++infinite;
    }
    return {infinite == 0, fmt("sup of finite ratios %.4g; %d of %d trials non-finite", sup, infinite, kTrials)};
}

// 5. CZ certificate.
Outcome cz_certificates() {
    constexpr int kFields = 1000;
    const std::array<double, 3> exps{1.0, 1.5, 2.0};
    std::atomic<int> failed{0}, checked{0};
    std::mutex m;
    std::string first;
    parallel_for(kFields, [&](std::size_t i) {
        std::mt19937_64 rng(derive_seed(105, i));
        const int d = 1 + static_cast<int>(i % 2);
        const Box box = d == 1 ? Box::line(-static_cast<std::int64_t>(rng() % 32), 64)
                               : Box::square(-static_cast<std::int64_t>(rng() % 8), 16);
        Field f = harness::uniform_field(rng, box);
        for (std::size_t k = 0; k < f.size(); ++k) f[k] = rng() % 3 ? 0.0 : 4.0 * f[k];
        if (f.is_zero()) f[0] = 1.0;
        const double alpha = std::uniform_real_distribution<double>(0.05, 2.0)(rng);
        for (double p_i : exps) {
            const auto cert = cz_certify(cz_decompose(f, p_i, alpha, 1.0));
            for (const auto& p : cert.properties) {
                ++checked;
                if (!p.ok) {
                    ++failed;
                    std::lock_guard lock(m);
                    if (first.empty()) first = p.name + " measured " + std::to_string(p.measured) + " bound " + std::to_string(p.bound);
                }
            }
        }
    });
    return {failed == 0, fmt("%d of %d property checks failed over %d fields x 3 exponents%s%s", failed.load(), checked.load(),
                             kFields, first.empty() ? "" : "; first: ", first.c_str())};
}

// 6. Counterexample alternation and variation growth, d = 1.
Outcome counterexample() {
    constexpr int kMaxN = 8;
    constexpr double kQ = 3.0, kSeconds = 120.0;
    const auto t0 = std::chrono::steady_clock::now();
    int bad_rows = 0, rows = 0;
    bool meets = true, increasing = true;
    double prev = -1.0, last = 0.0, last_bound = 0.0;
    for (int n = 1; n <= kMaxN; ++n) {
        const auto inst = make_counterexample(1, n);
        for (const auto& r : alternation_table(inst)) {
            ++rows;
            bad_rows += !r.pass;
        }
        const auto v = counterexample_variation(inst, kQ);
        meets = meets && v.meets_derived;
        increasing = increasing && v.value > prev;
        prev = v.value;
        last = v.value;
        last_bound = v.derived_bound;
    }
    const double s = elapsed(t0);
    return {bad_rows == 0 && meets && increasing && s < kSeconds,
            fmt("%d of %d threshold rows fail; V_q(n=8) = %.4f vs derived bound %.4f; increasing %s; %.1f s", bad_rows, rows,
                last, last_bound, increasing ? "yes" : "no", s)};
}

// 7. Carleson ratio uniform in n.
Outcome carleson() {
    constexpr int kTrials = 100, kMaxN = 6;
    constexpr double kFactor = 2.0;
    std::vector<std::vector<double>> r(kTrials);
    parallel_for(kTrials, [&](std::size_t i) {
        std::mt19937_64 rng(derive_seed(107, i));
        const Field b = harness::step_field(rng, 1, 1 + static_cast<int>(rng() % 3), 16, 0.7);
        for (int n = 0; n <= kMaxN; ++n) r[i].push_back(carleson_sweep(b, n).sup_ratio);
    });
    int unstable = 0, growing = 0;
    double worst = 0.0, sup = 0.0;
    for (const auto& v : r) {
        const double hi = *std::max_element(v.begin(), v.end());
        sup = std::max(sup, hi);
        if (v[0] > 0.0) worst = std::max(worst, hi / v[0]);
        if (hi > kFactor * v[0] * (1 + 1e-12)) ++unstable;
        if (v.back() > v.front() * (1 + 1e-12)) ++growing;
    }
    return {unstable == 0 && growing == 0,
            fmt("max over n / value at n = 0: %.4f (limit %.0f); %d trials grow from n = 0 to %d; sup ratio %.4f", worst, kFactor,
                growing, kMaxN, sup)};
}

// 8. Split domination on sweeps over dyadically complete grids.
Outcome split() {
    constexpr int kTrials = 1000;
    std::vector<int> ok(kTrials);
    parallel_for(kTrials, [&](std::size_t i) {
        std::mt19937_64 rng(derive_seed(108, i));
        const ConvexBody body = random_body(rng);
        const Field f1 = harness::uniform_field(rng, Box::line(0, 64));
        const Field f2 = harness::uniform_field(rng, Box::line(0, 64));
        const TimeGrid grid = TimeGrid::geometric(0, 5, 1 + static_cast<int>(rng() % 4));
        const Coord x{static_cast<std::int64_t>(rng() % 64), 0, 0};
        const double q = std::uniform_real_distribution<double>(1.5, 5.0)(rng);
        ok[i] = split_domination_check(avg_sweep(body, grid, f1, f2, x), grid, q).holds;
    });
    const long bad = std::count(ok.begin(), ok.end(), 0);
    return {bad == 0, fmt("%ld violations over %d sweeps", bad, kTrials)};
}

// 9. Product rule and sup-vs-variation.
Outcome elementary() {
    constexpr int kTrials = 10000;
    std::mt19937_64 rng(109);
    int prod = 0, sup = 0;
    for (int i = 0; i < kTrials; ++i) {
        const std::size_t m = 1 + rng() % 16;
        const auto a = random_sequence(rng, m), b = random_sequence(rng, m);
        const double q = std::uniform_real_distribution<double>(1.0, 6.0)(rng);
        prod += !product_rule_check(a, b, q).holds;
        sup += !sup_vs_variation_check(a, q, rng() % m).holds;
    }
    return {prod == 0 && sup == 0, fmt("product rule %d, sup bound %d violations over %d sequences each", prod, sup, kTrials)};
}

// 10. Change of variables: lattice average over G_Gamma against the direct quadrature.
Outcome equivalence() {
    constexpr int kInstances = 20, kCoarse = 3, kFine = 10;
    constexpr double kOrder = 1.0, kT = 0.5;
    std::vector<double> slope(kInstances), first(kInstances), final_err(kInstances);
    parallel_for(kInstances, [&](std::size_t i) {
        std::mt19937_64 rng(derive_seed(110, i));
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        const std::vector<double> lam{1 + 0.3 * u(rng), 0.3 * u(rng), 0.3 * u(rng), 1 + 0.3 * u(rng)};
        const double w1 = 1 + 2 * std::abs(u(rng)), w2 = 1 + 2 * std::abs(u(rng)), c1 = u(rng), c2 = u(rng);
        std::vector<double> lh, le;
        for (int k = kCoarse; k <= kFine; ++k) {
            const double h = std::ldexp(1.0, -k);
            const auto reach = static_cast<std::int64_t>(4.0 / h);
            const Box box = Box::line(-reach, 2 * reach, h);
            Field f1(box), f2(box);
            for (std::size_t j = 0; j < box.size(); ++j) {
                const double x = static_cast<double>(box.coord_of(j)[0]) * h;
                f1[j] = std::exp(-x * x) * std::cos(w1 * x + c1);
                f2[j] = std::exp(-x * x / 2) * std::sin(w2 * x + c2) + 0.5;
            }
            const double e = std::abs(dtt_avg(lam, kT, f1, f2, {0, 0, 0}) - dtt_via_body(lam, kT, f1, f2, {0, 0, 0}));
            lh.push_back(std::log(h));
            le.push_back(std::log(e));
            if (k == kCoarse) first[i] = e;
            final_err[i] = e;
        }
        double mx = 0, my = 0;
        for (std::size_t j = 0; j < lh.size(); ++j) {
            mx += lh[j];
            my += le[j];
        }
        mx /= static_cast<double>(lh.size());
        my /= static_cast<double>(lh.size());
        double sxy = 0, sxx = 0;
        for (std::size_t j = 0; j < lh.size(); ++j) {
            sxy += (lh[j] - mx) * (le[j] - my);
            sxx += (lh[j] - mx) * (lh[j] - mx);
        }
        slope[i] = sxy / sxx;
    });
    int below = 0, not_decreasing = 0;
    for (int i = 0; i < kInstances; ++i) {
        below += slope[i] < kOrder;
        not_decreasing += !(final_err[i] < first[i]);
    }
    return {below == 0 && not_decreasing == 0,
            fmt("least-squares order over h = 2^-%d..2^-%d: min %.3f, max %.3f (need >= %.0f); %d of %d not decreasing", kCoarse,
                kFine, *std::min_element(slope.begin(), slope.end()), *std::max_element(slope.begin(), slope.end()), kOrder,
                not_decreasing, kInstances)};
}

// 11. Norm sweeps across grid refinement with calibrated ceilings.
Outcome norm_sweeps() {
    constexpr double kTrend = 0.25, kSeconds = 1800.0;
    struct Case {
        const char* file;
        double ceiling;
    };
    const std::array<Case, 4> cases{{{"sweep_l2.cfg", 5.0}, {"sweep_l4.cfg", 3.9}, {"sweep_weak.cfg", 3.5}, {"sweep_bmo.cfg", 1.5}}};
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::string detail;
    for (const auto& c : cases) {
        auto cfg = harness::load_config(std::string(BILVAR_CONFIG_DIR) + "/" + c.file);
        cfg.grids = {64, 128, 256};
        cfg.ceiling = c.ceiling;
        cfg.trend_limit = kTrend;
        const auto r = harness::run_norm_sweep(cfg);
        ok = ok && r.pass();
        detail += fmt("%s%s max %.4f (ceiling %.1f) spread %.4f", detail.empty() ? "" : "; ", c.file, r.max, c.ceiling, r.trend);
    }
    const double s = elapsed(t0);
    return {ok && s < kSeconds, detail + fmt("; spread limit %.2f; %.0f s", kTrend, s)};
}

// 12. Interpolation weights.
Outcome interpolation() {
    constexpr int kPoints = 1000;
    constexpr double kS = 10.0, kTol = 1e-12;
    const auto verts = interp_vertices(kS);
    std::mt19937_64 rng(112);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    int out_of_range = 0;
    for (int i = 0; i < kPoints;) {
        const double x = u(rng), y = u(rng);
        if (x + y <= 1.0 / kS) continue;
        const auto p = interp_weights_reciprocal(x, y, kS);
        double sx = 0, sy = 0, sw = 0;
        for (std::size_t k = 0; k < 5; ++k) {
            sx += p.weights[k] * verts[k][0];
            sy += p.weights[k] * verts[k][1];
            sw += p.weights[k];
            out_of_range += p.weights[k] < 0.0 || p.weights[k] > 1.0;
        }
        worst = std::max({worst, std::abs(sx - x), std::abs(sy - y), std::abs(sw - 1.0)});
        ++i;
    }
    return {worst <= kTol && out_of_range == 0,
            fmt("max reconstruction error %.3g (tol %.0e), %d weights outside [0, 1], %d points", worst, kTol, out_of_range, kPoints)};
}

}  // namespace

int main() {
    criterion(1, "variation DP equals exhaustive enumeration", variation_oracle);
    criterion(2, "paraproduct telescoping identity", telescoping);
    criterion(3, "domination by the bilinear maximal function", domination);
    criterion(4, "maximal square ratio finite", maximal_square);
    criterion(5, "stopping-time decomposition certificate", cz_certificates);
    criterion(6, "counterexample alternation and variation growth", counterexample);
    criterion(7, "tent-mass ratio uniform in n", carleson);
    criterion(8, "long/short split domination", split);
    criterion(9, "product rule and sup bound", elementary);
    criterion(10, "change-of-variables equivalence order", equivalence);
    criterion(11, "norm sweep stability under refinement", norm_sweeps);
    criterion(12, "interpolation weights", interpolation);
    std::printf("%d of 12 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
