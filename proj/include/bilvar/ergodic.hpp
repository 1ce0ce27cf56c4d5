#pragma once

#include <array>
#include <functional>
#include <span>
#include <vector>

#include "bilvar/averaging.hpp"
#include "bilvar/convex_body.hpp"
#include "bilvar/field.hpp"

namespace bilvar {

/// Function on the torus [0, 1)^d, evaluated at any real point (taken mod 1).
using TorusFunction = std::function<double(std::span<const double>)>;

/// Periodic multilinear interpolant of samples on [0, N)^d with mesh 1/N.
TorusFunction periodic_interpolant(const Field& samples);

/// sum_k (a_k cos(2 pi k.w) + b_k sin(2 pi k.w)).
struct TrigPolynomial {
    int d = 1;
    std::vector<std::array<int, 2>> freq;
    std::vector<double> cos_coef;
    std::vector<double> sin_coef;

    double operator()(std::span<const double> w) const;
};

/// (1/|G_t|) integral over G_t of f1(T^x w) f2(T^y w), T^x w = w + beta x mod 1
/// (componentwise), sampled on (mesh Z)^{2d} and self-normalized.
double ergodic_bilinear_avg(std::span<const double> beta, const TorusFunction& f1, const TorusFunction& f2,
                            const ConvexBody& body, double t, std::span<const double> omega, double mesh);

/// The averages at every time of the grid.
std::vector<double> ergodic_sweep(std::span<const double> beta, const TorusFunction& f1, const TorusFunction& f2,
                                  const ConvexBody& body, const TimeGrid& grid, std::span<const double> omega,
                                  double mesh);

struct ErgodicRatio {
    double variation_norm = 0.0;  // ||V_q(A_t)||_{L^p(torus)}
    double input_norm = 0.0;      // ||f1||_{p1} ||f2||_{p2}
    double ratio = 0.0;
};

/// Norms on the torus by the midpoint rule on an m^d grid of points w.
ErgodicRatio ergodic_variation_ratio(std::span<const double> beta, const TorusFunction& f1, const TorusFunction& f2,
                                     const ConvexBody& body, const TimeGrid& grid, double q, double p, double p1,
                                     double p2, int m, double mesh);

}  // namespace bilvar
