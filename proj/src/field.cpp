#include "bilvar/field.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "bilvar/dyadic.hpp"

namespace bilvar {

Box::Box(int dim, Coord origin, Coord extent, double mesh)
    : dim_(dim), origin_(origin), extent_(extent), mesh_(mesh) {
    if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("Box: dim must be in 1..3");
    if (!(mesh > 0.0) || !std::isfinite(mesh)) throw std::invalid_argument("Box: mesh must be positive");
    for (int a = 0; a < kMaxDim; ++a) {
        if (a < dim) {
            if (extent_[a] < 1) throw std::invalid_argument("Box: extent components must be >= 1");
        } else {
            origin_[a] = 0;
            extent_[a] = 1;
        }
    }
}

Box Box::line(std::int64_t origin, std::int64_t extent, double mesh) {
    return Box(1, {origin, 0, 0}, {extent, 1, 1}, mesh);
}

Box Box::square(std::int64_t origin, std::int64_t extent, double mesh) {
    return Box(2, {origin, origin, 0}, {extent, extent, 1}, mesh);
}

Coord Box::upper() const {
    Coord u{};
    for (int a = 0; a < kMaxDim; ++a) u[a] = origin_[a] + extent_[a];
    return u;
}

double Box::cell_measure() const { return std::pow(mesh_, dim_); }

std::size_t Box::size() const {
    std::size_t n = 1;
    for (int a = 0; a < dim_; ++a) n *= static_cast<std::size_t>(extent_[a]);
    return n;
}

bool Box::contains(const Coord& c) const {
    for (int a = 0; a < dim_; ++a) {
        if (c[a] < origin_[a] || c[a] >= origin_[a] + extent_[a]) return false;
    }
    return true;
}

std::size_t Box::index_of(const Coord& c) const {
    std::size_t idx = 0;
    for (int a = 0; a < dim_; ++a) {
        idx = idx * static_cast<std::size_t>(extent_[a]) + static_cast<std::size_t>(c[a] - origin_[a]);
    }
    return idx;
}

Coord Box::coord_of(std::size_t index) const {
    Coord c{0, 0, 0};
    for (int a = dim_ - 1; a >= 0; --a) {
        const auto e = static_cast<std::size_t>(extent_[a]);
        c[a] = origin_[a] + static_cast<std::int64_t>(index % e);
        index /= e;
    }
    return c;
}

Box Box::expanded(std::int64_t margin) const {
    Coord o = origin_, e = extent_;
    for (int a = 0; a < dim_; ++a) {
        o[a] -= margin;
        e[a] += 2 * margin;
    }
    return Box(dim_, o, e, mesh_);
}

Box Box::united(const Box& other) const {
    if (other.dim_ != dim_ || other.mesh_ != mesh_) throw std::invalid_argument("Box::united: incompatible boxes");
    Coord o{}, e{};
    const Coord u1 = upper(), u2 = other.upper();
    for (int a = 0; a < kMaxDim; ++a) {
        o[a] = std::min(origin_[a], other.origin_[a]);
        e[a] = std::max(u1[a], u2[a]) - o[a];
    }
    return Box(dim_, o, e, mesh_);
}

bool Box::operator==(const Box& other) const {
    return dim_ == other.dim_ && origin_ == other.origin_ && extent_ == other.extent_ && mesh_ == other.mesh_;
}

Field::Field(Box box) : box_(box), samples_(box.size(), 0.0) {}

Field::Field(Box box, std::vector<double> samples) : box_(box), samples_(std::move(samples)) {
    if (samples_.size() != box_.size()) throw std::invalid_argument("Field: sample count does not match box");
    for (double v : samples_) {
        if (!std::isfinite(v)) throw std::invalid_argument("Field: samples must be finite");
    }
}

double Field::at(const Coord& c) const {
    return box_.contains(c) ? samples_[box_.index_of(c)] : 0.0;
}

Field Field::embedded(const Box& target) const {
    if (target.dim() != box_.dim() || target.mesh() != box_.mesh()) {
        throw std::invalid_argument("Field::embedded: incompatible box");
    }
    Field out(target);
    if (target == box_) {
        out.samples_ = samples_;
        return out;
    }
    for (std::size_t i = 0; i < samples_.size(); ++i) {
        const Coord c = box_.coord_of(i);
        if (target.contains(c)) out.samples_[target.index_of(c)] = samples_[i];
    }
    return out;
}

std::optional<Box> Field::support() const {
    const int d = box_.dim();
    Coord lo{}, hi{};
    bool any = false;
    for (std::size_t i = 0; i < samples_.size(); ++i) {
        if (samples_[i] == 0.0) continue;
        const Coord c = box_.coord_of(i);
        if (!any) {
            lo = hi = c;
            any = true;
        } else {
            for (int a = 0; a < d; ++a) {
                lo[a] = std::min(lo[a], c[a]);
                hi[a] = std::max(hi[a], c[a]);
            }
        }
    }
    if (!any) return std::nullopt;
    Coord ext{1, 1, 1};
    for (int a = 0; a < d; ++a) ext[a] = hi[a] - lo[a] + 1;
    return Box(d, lo, ext, box_.mesh());
}

bool Field::is_zero() const {
    return std::all_of(samples_.begin(), samples_.end(), [](double v) { return v == 0.0; });
}

double Field::max_abs() const {
    double m = 0.0;
    for (double v : samples_) m = std::max(m, std::abs(v));
    return m;
}

namespace {

template <class Op>
Field combine(const Field& a, const Field& b, Op op) {
    if (a.box() == b.box()) {
        Field out(a.box());
        for (std::size_t i = 0; i < a.size(); ++i) out[i] = op(a[i], b[i]);
        return out;
    }
    const Box u = a.box().united(b.box());
    const Field ea = a.embedded(u), eb = b.embedded(u);
    Field out(u);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = op(ea[i], eb[i]);
    return out;
}

}  // namespace

Field operator+(const Field& a, const Field& b) { return combine(a, b, [](double x, double y) { return x + y; }); }
Field operator-(const Field& a, const Field& b) { return combine(a, b, [](double x, double y) { return x - y; }); }
Field operator*(const Field& a, const Field& b) { return combine(a, b, [](double x, double y) { return x * y; }); }
Field operator*(double c, const Field& a) {
    return a.map([c](double v) { return c * v; });
}

double max_abs_difference(const Field& a, const Field& b) { return (a - b).max_abs(); }

double lp_norm(const Field& f, double p) {
    if (!(p > 0.0)) throw std::invalid_argument("lp_norm: exponent must be positive");
    if (std::isinf(p)) return f.max_abs();
    const double m = f.max_abs();
    if (m == 0.0) return 0.0;
    // Scale by the max to keep |f/m|^p in range for large or tiny p.
    double s = 0.0;
    for (double v : f.samples()) {
        if (v != 0.0) s += std::pow(std::abs(v) / m, p);
    }
    return m * std::pow(s * f.box().cell_measure(), 1.0 / p);
}

double weak_lp_quasinorm(const Field& f, double p) {
    if (!(p > 0.0)) throw std::invalid_argument("weak_lp_quasinorm: exponent must be positive");
    if (std::isinf(p)) throw std::invalid_argument("weak_lp_quasinorm: exponent must be finite");
    std::vector<double> v;
    v.reserve(f.size());
    for (double x : f.samples()) {
        if (x != 0.0) v.push_back(std::abs(x));
    }
    std::sort(v.begin(), v.end(), std::greater<>());
    const double h = f.box().cell_measure();
    double best = 0.0;
    // For lambda just below v_i the level set has at least i cells; ties are
    // covered because the i-th entry of a run of equal values sees the run.
    for (std::size_t i = 0; i < v.size(); ++i) {
        best = std::max(best, v[i] * std::pow(static_cast<double>(i + 1) * h, 1.0 / p));
    }
    return best;
}

namespace {

// Mean absolute deviation from the (lower) median of `vals` plus `zeros`
// implicit zero samples.
double median_oscillation(std::vector<double>& vals, std::int64_t zeros) {
    const std::int64_t n = static_cast<std::int64_t>(vals.size()) + zeros;
    if (n == 0) return 0.0;
    std::sort(vals.begin(), vals.end());
    const std::int64_t k = (n - 1) / 2;
    // Position of the implicit zeros in the merged order.
    const auto neg = static_cast<std::int64_t>(std::lower_bound(vals.begin(), vals.end(), 0.0) - vals.begin());
    double median;
    if (k < neg) {
        median = vals[static_cast<std::size_t>(k)];
    } else if (k < neg + zeros) {
        median = 0.0;
    } else {
        median = vals[static_cast<std::size_t>(k - zeros)];
    }
    double s = static_cast<double>(zeros) * std::abs(median);
    for (double v : vals) s += std::abs(v - median);
    return s / static_cast<double>(n);
}

}  // namespace

std::vector<double> bmo_level_profile(const Field& f, int extra_levels) {
    const auto supp = f.support();
    if (!supp) return {0.0};
    const int d = f.box().dim();
    const int top = covering_level(*supp) + extra_levels;
    std::vector<double> profile;
    for (int j = 0; j <= top; ++j) {
        const std::int64_t cube_cells = std::int64_t{1} << (j * d);
        double level_sup = 0.0;
        for (const DyadicCube& q : cubes_meeting(*supp, j)) {
            const Box qb = cube_box(q, d, f.box().mesh());
            std::vector<double> vals;
            // Intersect the cube with the field box.
            Coord lo{}, ext{1, 1, 1};
            bool empty = false;
            for (int a = 0; a < d; ++a) {
                const std::int64_t l = std::max(qb.origin()[a], f.box().origin()[a]);
                const std::int64_t u = std::min(qb.upper()[a], f.box().upper()[a]);
                if (u <= l) empty = true;
                lo[a] = l;
                ext[a] = std::max<std::int64_t>(u - l, 1);
            }
            if (!empty) {
                const Box inter(d, lo, ext, f.box().mesh());
                vals.reserve(inter.size());
                for (std::size_t i = 0; i < inter.size(); ++i) {
                    const double v = f.at(inter.coord_of(i));
                    if (v != 0.0) vals.push_back(v);
                }
            }
            const std::int64_t zeros = cube_cells - static_cast<std::int64_t>(vals.size());
            level_sup = std::max(level_sup, median_oscillation(vals, zeros));
        }
        profile.push_back(level_sup);
    }
    return profile;
}

double bmo_dyadic_norm(const Field& f) {
    const auto prof = bmo_level_profile(f, 1);
    return *std::max_element(prof.begin(), prof.end());
}

NormReport measure(const Field& f, NormKind kind, double p) {
    NormReport r{p, kind, 0.0};
    switch (kind) {
        case NormKind::strong: r.value = lp_norm(f, p); break;
        case NormKind::weak: r.value = weak_lp_quasinorm(f, p); break;
        case NormKind::bmo_dyadic: r.value = bmo_dyadic_norm(f); break;
    }
    return r;
}

namespace {

template <class T>
void put_le(std::ostream& out, T v) {
    static_assert(std::endian::native == std::endian::little, "NDF1 writer assumes a little-endian host");
    char buf[sizeof(T)];
    std::memcpy(buf, &v, sizeof(T));
    out.write(buf, sizeof(T));
}

template <class T>
T get_le(std::istream& in) {
    char buf[sizeof(T)];
    in.read(buf, sizeof(T));
    if (!in) throw std::runtime_error("NDF1: truncated input");
    T v;
    std::memcpy(&v, buf, sizeof(T));
    return v;
}

}  // namespace

void write_ndf1(std::ostream& out, const Field& f) {
    const Box& b = f.box();
    out.write("NDF1", 4);
    put_le<std::uint32_t>(out, static_cast<std::uint32_t>(b.dim()));
    for (int a = 0; a < b.dim(); ++a) put_le<std::int64_t>(out, b.origin()[a]);
    for (int a = 0; a < b.dim(); ++a) put_le<std::uint64_t>(out, static_cast<std::uint64_t>(b.extent()[a]));
    put_le<double>(out, b.mesh());
    for (double v : f.samples()) put_le<double>(out, v);
}

Field read_ndf1(std::istream& in) {
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, "NDF1", 4) != 0) throw std::runtime_error("NDF1: bad magic");
    const auto d = get_le<std::uint32_t>(in);
    if (d < 1 || d > static_cast<std::uint32_t>(kMaxDim)) throw std::runtime_error("NDF1: unsupported dimension");
    Coord origin{0, 0, 0}, extent{1, 1, 1};
    for (std::uint32_t a = 0; a < d; ++a) origin[a] = get_le<std::int64_t>(in);
    for (std::uint32_t a = 0; a < d; ++a) {
        const auto e = get_le<std::uint64_t>(in);
        if (e == 0 || e > (std::uint64_t{1} << 40)) throw std::runtime_error("NDF1: bad extent");
        extent[a] = static_cast<std::int64_t>(e);
    }
    const double mesh = get_le<double>(in);
    const Box box(static_cast<int>(d), origin, extent, mesh);
    std::vector<double> samples(box.size());
    for (double& v : samples) v = get_le<double>(in);
    return Field(box, std::move(samples));
}

void write_ndf1_file(const std::string& path, const Field& f) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path);
    write_ndf1(out, f);
}

Field read_ndf1_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    return read_ndf1(in);
}

void write_csv(std::ostream& out, const Field& f) {
    if (f.box().dim() != 1) throw std::invalid_argument("write_csv: only one-dimensional fields");
    out << "coord,value\n";
    std::ostringstream line;
    line.precision(17);
    for (std::size_t i = 0; i < f.size(); ++i) {
        line.str("");
        line << f.box().coord_of(i)[0] << ',' << f[i] << '\n';
        out << line.str();
    }
}

Field read_csv(std::istream& in, double mesh) {
    std::string line;
    std::vector<std::int64_t> coords;
    std::vector<double> values;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (line.rfind("coord", 0) == 0) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw std::runtime_error("read_csv: expected 'coord,value'");
        coords.push_back(std::stoll(line.substr(0, comma)));
        values.push_back(std::stod(line.substr(comma + 1)));
    }
    if (coords.empty()) throw std::runtime_error("read_csv: no samples");
    for (std::size_t i = 1; i < coords.size(); ++i) {
        if (coords[i] != coords[i - 1] + 1) throw std::runtime_error("read_csv: coordinates must be contiguous");
    }
    return Field(Box::line(coords.front(), static_cast<std::int64_t>(coords.size()), mesh), std::move(values));
}

}  // namespace bilvar
