#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace bilvar {

inline constexpr int kMaxDim = 3;

/// Integer lattice coordinate. Components beyond the active dimension are 0.
using Coord = std::array<std::int64_t, kMaxDim>;

/// Axis-aligned box of cells on the lattice (mesh * Z)^d. Cell c covers
/// [c*mesh, (c+1)*mesh) in every axis and is sampled at its lower corner.
class Box {
public:
    Box() = default;
    Box(int dim, Coord origin, Coord extent, double mesh = 1.0);

    static Box line(std::int64_t origin, std::int64_t extent, double mesh = 1.0);
    static Box square(std::int64_t origin, std::int64_t extent, double mesh = 1.0);

    int dim() const { return dim_; }
    const Coord& origin() const { return origin_; }
    const Coord& extent() const { return extent_; }
    /// One past the last cell in every axis.
    Coord upper() const;
    double mesh() const { return mesh_; }
    double cell_measure() const;
    std::size_t size() const;

    bool contains(const Coord& c) const;
    std::size_t index_of(const Coord& c) const;
    Coord coord_of(std::size_t index) const;

    /// Grows the box by `margin` cells on every side of every active axis.
    Box expanded(std::int64_t margin) const;
    /// Smallest box containing both (same dim and mesh required).
    Box united(const Box& other) const;

    bool operator==(const Box& other) const;

private:
    int dim_ = 1;
    Coord origin_{0, 0, 0};
    Coord extent_{1, 1, 1};
    double mesh_ = 1.0;
};

/// Finitely supported real function on a box, extended by zero outside it.
class Field {
public:
    Field() = default;
    explicit Field(Box box);
    Field(Box box, std::vector<double> samples);

    const Box& box() const { return box_; }
    std::span<const double> samples() const { return samples_; }
    std::span<double> samples() { return samples_; }
    std::size_t size() const { return samples_.size(); }

    double operator[](std::size_t i) const { return samples_[i]; }
    double& operator[](std::size_t i) { return samples_[i]; }

    /// Zero-extended evaluation.
    double at(const Coord& c) const;

    /// Copy onto another box of the same dim/mesh, zero-filling or cropping.
    Field embedded(const Box& target) const;

    /// Bounding box of the nonzero samples; nullopt for the zero field.
    std::optional<Box> support() const;

    bool is_zero() const;
    double max_abs() const;

    template <class Fn>
    Field map(Fn&& fn) const {
        Field out(box_);
        for (std::size_t i = 0; i < samples_.size(); ++i) out.samples_[i] = fn(samples_[i]);
        return out;
    }

private:
    Box box_;
    std::vector<double> samples_;
};

// Pointwise arithmetic on the union of the two boxes.
Field operator+(const Field& a, const Field& b);
Field operator-(const Field& a, const Field& b);
Field operator*(const Field& a, const Field& b);
Field operator*(double c, const Field& a);

/// Largest absolute pointwise difference, zero-extended over both boxes.
double max_abs_difference(const Field& a, const Field& b);

enum class NormKind { strong, weak, bmo_dyadic };

struct NormReport {
    double exponent = 2.0;
    NormKind kind = NormKind::strong;
    double value = 0.0;
};

/// (sum |f|^p h^d)^(1/p); p = +inf gives max |f|. Rejects p <= 0.
double lp_norm(const Field& f, double p);

/// sup_lambda lambda * |{|f| > lambda}|^(1/p), evaluated exactly at the
/// sample levels.
double weak_lp_quasinorm(const Field& f, double p);

/// Dyadic BMO seminorm: sup over dyadic cubes meeting the support (up to one
/// level above the covering level) of the mean absolute deviation from the
/// median.
double bmo_dyadic_norm(const Field& f);

/// Per-level sup of the median oscillation, level 0 first. Exposed so the
/// decay above the covering level can be inspected.
std::vector<double> bmo_level_profile(const Field& f, int extra_levels = 1);

NormReport measure(const Field& f, NormKind kind, double p);

// NDF1 binary format (little-endian): "NDF1", u32 d, d x i64 origin,
// d x u64 extent, f64 mesh, samples as f64 row-major.
void write_ndf1(std::ostream& out, const Field& f);
Field read_ndf1(std::istream& in);
void write_ndf1_file(const std::string& path, const Field& f);
Field read_ndf1_file(const std::string& path);

// Two-column CSV (coord,value) for one-dimensional fields.
void write_csv(std::ostream& out, const Field& f);
Field read_csv(std::istream& in, double mesh = 1.0);

}  // namespace bilvar
