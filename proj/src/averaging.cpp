#include "bilvar/averaging.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <string>

#include "bilvar/parallel.hpp"

namespace bilvar {

DegenerateScale::DegenerateScale(double t)
    : std::runtime_error("no lattice point in G_t at t = " + std::to_string(t)), t_(t) {}

double lattice_scale(AvgMode mode, double t, double mesh) {
    if (!(t > 0.0)) throw std::invalid_argument("averaging: t must be positive");
    return mode == AvgMode::continuum_quadrature ? t / mesh : t;
}

TimeGrid::TimeGrid(std::vector<double> times) : times_(std::move(times)) {
    for (std::size_t i = 0; i < times_.size(); ++i) {
        if (!(times_[i] > 0.0) || !std::isfinite(times_[i])) throw std::invalid_argument("TimeGrid: times must be positive");
        if (i > 0 && !(times_[i] > times_[i - 1])) throw std::invalid_argument("TimeGrid: times must increase strictly");
        int e = 0;
        if (std::frexp(times_[i], &e) == 0.5) anchors_.push_back(i);
    }
}

TimeGrid TimeGrid::geometric(int k_min, int k_max, int per_octave) {
    if (k_max < k_min || per_octave < 1) throw std::invalid_argument("TimeGrid::geometric: bad range");
    std::vector<double> t;
    for (int k = k_min; k < k_max; ++k) {
        t.push_back(std::ldexp(1.0, k));
        for (int j = 1; j < per_octave; ++j) t.push_back(std::exp2(k + static_cast<double>(j) / per_octave));
    }
    t.push_back(std::ldexp(1.0, k_max));
    return TimeGrid(std::move(t));
}

int TimeGrid::anchor_exponent(std::size_t i) const {
    int e = 0;
    if (std::frexp(times_.at(i), &e) != 0.5) throw std::invalid_argument("TimeGrid: not an anchor");
    return e - 1;
}

bool TimeGrid::dyadically_complete() const {
    if (anchors_.empty() || anchors_.front() != 0 || anchors_.back() != times_.size() - 1) return false;
    for (std::size_t a = 1; a < anchors_.size(); ++a) {
        if (anchor_exponent(anchors_[a]) != anchor_exponent(anchors_[a - 1]) + 1) return false;
    }
    return true;
}

Stencil make_stencil(const ConvexBody& body, double s) {
    const LatticePointSet set = enumerate_lattice(body, s);
    if (set.count() == 0) throw DegenerateScale(s);
    const int n = body.ambient_dim();
    Stencil st;
    st.d = body.d();
    st.scale = s;
    st.count = set.count();
    for (const auto& p : set.points) {
        const std::int64_t last = p[static_cast<std::size_t>(n - 1)];
        LatticePoint pre = p;
        pre[static_cast<std::size_t>(n - 1)] = 0;
        if (!st.runs.empty() && st.runs.back().prefix == pre) {
            if (last != st.runs.back().hi + 1) throw std::logic_error("make_stencil: lattice slice is not an interval");
            st.runs.back().hi = last;
        } else {
            st.runs.push_back({pre, last, last});
        }
    }
    return st;
}

PairKernel::PairKernel(const Field& f1, const Field& f2) {
    if (f1.box().dim() != f2.box().dim()) throw std::invalid_argument("PairKernel: dimension mismatch");
    box_ = f1.box().united(f2.box());
    f1_ = f1.embedded(box_);
    const Field g = f2.embedded(box_);
    const int last = box_.dim() - 1;
    const auto width = static_cast<std::size_t>(box_.extent()[static_cast<std::size_t>(last)]);
    const std::size_t rows = box_.size() / width;
    prefix_.assign(rows * (width + 1), 0.0);
    for (std::size_t r = 0; r < rows; ++r) {
        double acc = 0.0;
        for (std::size_t c = 0; c < width; ++c) {
            acc += g[r * width + c];
            prefix_[r * (width + 1) + c + 1] = acc;
        }
    }
}

double PairKernel::f1_at(const Coord& c) const { return f1_.at(c); }

double PairKernel::f2_range(std::int64_t row, std::int64_t lo, std::int64_t hi) const {
    const int last = box_.dim() - 1;
    const std::int64_t o = box_.origin()[static_cast<std::size_t>(last)];
    const std::int64_t e = box_.extent()[static_cast<std::size_t>(last)];
    lo = std::max(lo, o);
    hi = std::min(hi, o + e - 1);
    if (lo > hi) return 0.0;
    const auto w = static_cast<std::size_t>(e + 1);
    const std::size_t base = static_cast<std::size_t>(row) * w;
    return prefix_[base + static_cast<std::size_t>(hi - o + 1)] - prefix_[base + static_cast<std::size_t>(lo - o)];
}

double PairKernel::sum(const Stencil& st, const Coord& x) const {
    const int d = st.d;
    if (d != box_.dim()) throw std::invalid_argument("PairKernel: stencil dimension mismatch");
    double s = 0.0;
    for (const Run& run : st.runs) {
        Coord c1{0, 0, 0};
        for (int a = 0; a < d; ++a) c1[static_cast<std::size_t>(a)] = x[static_cast<std::size_t>(a)] + run.prefix[static_cast<std::size_t>(a)];
        const double v = f1_at(c1);
        if (v == 0.0) continue;
        std::int64_t row = 0;
        if (d == 2) {
            const std::int64_t r = x[0] + run.prefix[2];
            if (r < box_.origin()[0] || r >= box_.origin()[0] + box_.extent()[0]) continue;
            row = r - box_.origin()[0];
        }
        const std::int64_t xl = x[static_cast<std::size_t>(d - 1)];
        s += v * f2_range(row, xl + run.lo, xl + run.hi);
    }
    return s;
}

double PairKernel::average(const Stencil& st, const Coord& x) const {
    return sum(st, x) / static_cast<double>(st.count);
}

namespace {

double point_sum(const std::vector<LatticePoint>& points, int d, const Field& f1, const Field& f2, const Coord& x) {
    double s = 0.0;
    for (const auto& p : points) {
        Coord a{0, 0, 0}, b{0, 0, 0};
        for (int i = 0; i < d; ++i) {
            a[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(i)] + p[static_cast<std::size_t>(i)];
            b[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(i)] + p[static_cast<std::size_t>(i + d)];
        }
        s += f1.at(a) * f2.at(b);
    }
    return s;
}

void check_pair(const ConvexBody& body, const Field& f1, const Field& f2) {
    if (f1.box().dim() != body.d() || f2.box().dim() != body.d()) throw std::invalid_argument("averaging: field and body dimensions differ");
    if (f1.box().mesh() != f2.box().mesh()) throw std::invalid_argument("averaging: fields must share the mesh");
}

}  // namespace

double avg_at(const AvgRequest& req, const Coord& x) {
    check_pair(req.body, req.f1, req.f2);
    const double s = lattice_scale(req.mode, req.t, req.f1.box().mesh());
    const LatticePointSet set = enumerate_lattice(req.body, s);
    if (set.count() == 0) throw DegenerateScale(req.t);
    return point_sum(set.points, req.body.d(), req.f1, req.f2, x) / static_cast<double>(set.count());
}

std::vector<double> avg_sweep(const ConvexBody& body, const TimeGrid& grid, const Field& f1, const Field& f2,
                              const Coord& x, AvgMode mode) {
    check_pair(body, f1, f2);
    std::vector<double> out;
    out.reserve(grid.size());
    double total = 0.0;
    std::size_t count = 0;
    double prev = 0.0;
    for (double t : grid.times()) {
        const double s = lattice_scale(mode, t, f1.box().mesh());
        const LatticePointSet add = count == 0 ? enumerate_lattice(body, s) : shell(body, prev, s);
        total += point_sum(add.points, body.d(), f1, f2, x);
        count += add.count();
        if (count == 0) throw DegenerateScale(t);
        out.push_back(total / static_cast<double>(count));
        prev = s;
    }
    return out;
}

double fast_slice_avg(const AvgRequest& req, const Coord& x) {
    if (req.body.d() != 1) throw std::invalid_argument("fast_slice_avg: d must be 1");
    if (req.mode != AvgMode::lattice_counting) throw std::invalid_argument("fast_slice_avg: lattice mode only");
    check_pair(req.body, req.f1, req.f2);
    const Stencil st = make_stencil(req.body, req.t);
    return PairKernel(req.f1, req.f2).average(st, x);
}

std::int64_t reach_cells(const ConvexBody& body, double t, AvgMode mode, double mesh) {
    return static_cast<std::int64_t>(std::floor(lattice_scale(mode, t, mesh) * body.r_out() * (1.0 + kMembershipSlack)));
}

Field avg_field(const AvgRequest& req, const Box& eval_box) {
    check_pair(req.body, req.f1, req.f2);
    const Stencil st = make_stencil(req.body, lattice_scale(req.mode, req.t, req.f1.box().mesh()));
    const PairKernel kernel(req.f1, req.f2);
    Field out(eval_box);
    parallel_for(eval_box.size(), [&](std::size_t i) { out[i] = kernel.average(st, eval_box.coord_of(i)); });
    return out;
}

std::vector<Field> avg_field_sweep(const ConvexBody& body, const TimeGrid& grid, const Field& f1, const Field& f2,
                                   const Box& eval_box, AvgMode mode) {
    check_pair(body, f1, f2);
    std::vector<Stencil> stencils;
    stencils.reserve(grid.size());
    for (double t : grid.times()) stencils.push_back(make_stencil(body, lattice_scale(mode, t, f1.box().mesh())));
    const PairKernel kernel(f1, f2);
    std::vector<Field> out(grid.size(), Field(eval_box));
    parallel_for(eval_box.size(), [&](std::size_t i) {
        const Coord x = eval_box.coord_of(i);
        for (std::size_t k = 0; k < stencils.size(); ++k) out[k][i] = kernel.average(stencils[k], x);
    });
    return out;
}

double interpolate(const Field& f, std::span<const double> point) {
    const int d = f.box().dim();
    if (point.size() != static_cast<std::size_t>(d)) throw std::invalid_argument("interpolate: dimension mismatch");
    const double h = f.box().mesh();
    std::int64_t base[kMaxDim] = {0, 0, 0};
    double frac[kMaxDim] = {0.0, 0.0, 0.0};
    for (int a = 0; a < d; ++a) {
        const double u = point[static_cast<std::size_t>(a)] / h;
        const double fl = std::floor(u);
        base[a] = static_cast<std::int64_t>(fl);
        frac[a] = u - fl;
    }
    double s = 0.0;
    for (int corner = 0; corner < (1 << d); ++corner) {
        Coord c{0, 0, 0};
        double w = 1.0;
        for (int a = 0; a < d; ++a) {
            const bool up = (corner >> a) & 1;
            c[static_cast<std::size_t>(a)] = base[a] + (up ? 1 : 0);
            w *= up ? frac[a] : 1.0 - frac[a];
        }
        if (w != 0.0) s += w * f.at(c);
    }
    return s;
}

std::vector<double> invert_matrix(const std::vector<double>& m, int n) {
    if (m.size() != static_cast<std::size_t>(n * n)) throw std::invalid_argument("invert_matrix: size mismatch");
    Eigen::MatrixXd a(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) a(r, c) = m[static_cast<std::size_t>(r * n + c)];
    Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
    if (!lu.isInvertible()) throw std::invalid_argument("invert_matrix: singular matrix");
    const Eigen::MatrixXd inv = lu.inverse();
    std::vector<double> out(static_cast<std::size_t>(n * n));
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) out[static_cast<std::size_t>(r * n + c)] = inv(r, c);
    return out;
}

double dtt_avg(const std::vector<double>& lambda, double t, const Field& f1, const Field& f2, const Coord& x,
               double spacing) {
    const int d = f1.box().dim();
    const int n = 2 * d;
    if (lambda.size() != static_cast<std::size_t>(n * n)) throw std::invalid_argument("dtt_avg: Lambda must be 2d x 2d");
    if (!(t > 0.0)) throw std::invalid_argument("dtt_avg: t must be positive");
    invert_matrix(lambda, n);  // rejects singular Lambda
    const double h = f1.box().mesh();
    if (spacing <= 0.0) spacing = h;
    const auto nodes = static_cast<std::int64_t>(std::ceil(2.0 * t / spacing));
    const double step = 2.0 * t / static_cast<double>(nodes);
    std::int64_t total = 1;
    for (int a = 0; a < n; ++a) total *= nodes;
    double sum = 0.0;
    std::size_t count = 0;
    double u[4], y1[2], y2[2];
    for (std::int64_t idx = 0; idx < total; ++idx) {
        std::int64_t rest = idx;
        for (int a = n - 1; a >= 0; --a) {
            u[a] = -t + (static_cast<double>(rest % nodes) + 0.5) * step;
            rest /= nodes;
        }
        double n1 = 0.0, n2 = 0.0;
        for (int a = 0; a < d; ++a) {
            n1 += u[a] * u[a];
            n2 += u[d + a] * u[d + a];
        }
        if (n1 >= t * t || n2 >= t * t) continue;
        for (int r = 0; r < d; ++r) {
            double s1 = 0.0, s2 = 0.0;
            for (int c = 0; c < n; ++c) {
                s1 += lambda[static_cast<std::size_t>(r * n + c)] * u[c];
                s2 += lambda[static_cast<std::size_t>((d + r) * n + c)] * u[c];
            }
            y1[r] = static_cast<double>(x[static_cast<std::size_t>(r)]) * h + s1;
            y2[r] = static_cast<double>(x[static_cast<std::size_t>(r)]) * h + s2;
        }
        sum += interpolate(f1, std::span<const double>(y1, static_cast<std::size_t>(d))) *
               interpolate(f2, std::span<const double>(y2, static_cast<std::size_t>(d)));
        ++count;
    }
    if (count == 0) throw DegenerateScale(t);
    return sum / static_cast<double>(count);
}

double dtt_via_body(const std::vector<double>& lambda, double t, const Field& f1, const Field& f2, const Coord& x) {
    const int d = f1.box().dim();
    const ConvexBody body = ConvexBody::gamma(d, invert_matrix(lambda, 2 * d));
    const Stencil st = make_stencil(body, lattice_scale(AvgMode::continuum_quadrature, t, f1.box().mesh()));
    return PairKernel(f1, f2).average(st, x);
}

}  // namespace bilvar
