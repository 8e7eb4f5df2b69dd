#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "dtt/targets.hpp"

namespace dtt {

/// Tensorized Gauss-Legendre grid over a box, d <= 4. Used as an independent
/// brute-force reference for integrals, moments, and divergences.
struct QuadGrid {
    std::vector<VectorXd> nodes;    // per dimension, length q
    std::vector<VectorXd> weights;  // positive, summing to the side length
    int d = 0;

    static QuadGrid make(const VectorXd& lower, const VectorXd& upper, int q);
    long size() const;
};

using PointFn = std::function<double(const VectorXd&)>;

/// Tensor-product quadrature; exact to ~1e-12 relative for polynomials of
/// per-dimension degree <= 2q-1.
double quad_integral(const PointFn& f, const QuadGrid& grid);

struct Divergences {
    double hellinger = 0;     // sqrt(0.5 int (sqrt f - sqrt fhat)^2)
    double tv = 0;            // 0.5 int |f - fhat|
    double chi2 = 0;          // int (f/fhat)^2 fhat - 1
    double l2_sqrt_err = 0;   // ||gtilde - sqrt(pi)||_2, if surrogate given
    double z = 0;             // normalizer of the target
    double z_hat = 0;         // mass of the approximation (1 if normalized)
};

/// Quadrature divergences between the normalized target and a normalized
/// approximate log-density, d <= 3. sqrt_surrogate, when given, is compared
/// against the square root of the unnormalized target.
Divergences divergences(const TargetDensity& target, const PointFn& approx_logpdf,
                        const QuadGrid& grid,
                        const PointFn& sqrt_surrogate = nullptr);

}  // namespace dtt
