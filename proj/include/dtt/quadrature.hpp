#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <utility>

namespace dtt {

/// Gauss-Legendre nodes and weights on [-1,1], computed by Newton iteration
/// on the Legendre recurrence. Accurate to ~1e-15 for q up to a few hundred.
inline std::pair<Eigen::VectorXd, Eigen::VectorXd> gauss_legendre(int q) {
    Eigen::VectorXd x(q), w(q);
    for (int i = 0; i < q; ++i) {
        // Tricomi initial guess for the i-th root (descending order)
        double z = std::cos(M_PI * (i + 0.75) / (q + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < q; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            pp = q * (z * p0 - p1) / (z * z - 1.0);
            double dz = p0 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        x[q - 1 - i] = z;
        w[q - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
    }
    return {x, w};
}

/// Same rule mapped to [a,b].
inline std::pair<Eigen::VectorXd, Eigen::VectorXd>
gauss_legendre(int q, double a, double b) {
    auto [x, w] = gauss_legendre(q);
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    return {(x.array() * half + mid).matrix(), (w * half).eval()};
}

}  // namespace dtt
