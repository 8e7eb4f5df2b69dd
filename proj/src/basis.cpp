#include "dtt/basis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dtt/quadrature.hpp"

namespace dtt {

std::string family_name(BasisFamily f) {
    switch (f) {
        case BasisFamily::PiecewiseLinear: return "piecewise-linear";
        case BasisFamily::Chebyshev2: return "chebyshev2";
        case BasisFamily::Fourier: return "fourier";
    }
    return "?";
}

BasisFamily family_from_name(const std::string& s) {
    if (s == "piecewise-linear" || s == "piecewise_linear" || s == "linear")
        return BasisFamily::PiecewiseLinear;
    if (s == "chebyshev2" || s == "chebyshev") return BasisFamily::Chebyshev2;
    if (s == "fourier") return BasisFamily::Fourier;
    throw std::invalid_argument("unknown basis family: " + s);
}

MatrixXd Basis1D::psi_eval(const Eigen::Ref<const VectorXd>& zeta) const {
    const auto m = zeta.size();
    MatrixXd P(m, n_);
    if (family_ == BasisFamily::Chebyshev2) {
        // Chebyshev polynomials of the second kind via the three-term recurrence.
        for (Eigen::Index r = 0; r < m; ++r) {
            double z = zeta[r];
            double u0 = 1.0, u1 = 2.0 * z;
            P(r, 0) = u0;
            if (n_ > 1) P(r, 1) = u1;
            for (int k = 2; k < n_; ++k) {
                double u2 = 2.0 * z * u1 - u0;
                P(r, k) = u2;
                u0 = u1;
                u1 = u2;
            }
        }
    } else {  // Fourier
        const int half = n_ / 2;
        for (Eigen::Index r = 0; r < m; ++r) {
            double z = zeta[r];
            P(r, 0) = 1.0;
            for (int k = 1; k < half; ++k) {
                P(r, 2 * k - 1) = std::sin(k * M_PI * z);
                P(r, 2 * k) = std::cos(k * M_PI * z);
            }
            P(r, n_ - 1) = std::cos(half * M_PI * z);
        }
    }
    return P;
}

Basis1D Basis1D::make(BasisFamily family, int n, double a, double b) {
    if (n < 2) throw std::invalid_argument("basis cardinality must be >= 2");
    if (!(a < b)) throw std::invalid_argument("degenerate domain");
    if (family == BasisFamily::Fourier && n % 2 != 0)
        throw std::invalid_argument("fourier basis needs even cardinality");

    Basis1D B;
    B.family_ = family;
    B.n_ = n;
    B.a_ = a;
    B.b_ = b;

    if (family == BasisFamily::PiecewiseLinear) {
        // n equally spaced interior collocation points; the hat functions are
        // clamped (constant) over the two boundary cells, keeping the exact
        // partition of unity on all of [a, b]
        const double h = (b - a) / (n + 1);
        B.nodes_ = VectorXd::LinSpaced(n, a + h, b - h);
        B.mass_ = MatrixXd::Zero(n, n);
        for (int i = 0; i < n; ++i) {
            bool end = (i == 0 || i == n - 1);
            B.mass_(i, i) = end ? 4.0 * h / 3.0 : 2.0 * h / 3.0;
            if (i + 1 < n) {
                B.mass_(i, i + 1) = h / 6.0;
                B.mass_(i + 1, i) = h / 6.0;
            }
        }
        B.int_weights_ = VectorXd::Constant(n, h);
        B.int_weights_[0] = 1.5 * h;
        B.int_weights_[n - 1] = 1.5 * h;
        // CDF pieces are assembled from nodal values directly; no extra grid.
        B.cdf_nodes_ = B.nodes_;
        B.cdf_eval_ = MatrixXd::Identity(n, n);
    } else {
        VectorXd zeta(n);
        if (family == BasisFamily::Chebyshev2) {
            // Gauss points of the first-kind polynomial of degree n; these are
            // the odd-indexed roots of the degree 2n-1 second-kind polynomial.
            for (int j = 0; j < n; ++j)
                zeta[j] = std::cos((2.0 * (n - j) - 1.0) * M_PI / (2.0 * n));
        } else {
            for (int j = 0; j < n; ++j) zeta[j] = 2.0 * (j + 1.0) / n - 1.0;
        }
        B.nodes_ = VectorXd(n);
        for (int j = 0; j < n; ++j) B.nodes_[j] = B.from_canonical(zeta[j]);

        MatrixXd V = B.psi_eval(zeta);
        B.psi_inv_ = V.partialPivLu().inverse();

        // Mass and integral weights of the underlying spectral basis on [-1,1].
        MatrixXd Mpsi;
        VectorXd wpsi;
        if (family == BasisFamily::Chebyshev2) {
            auto [qx, qw] = gauss_legendre(n + 1);
            MatrixXd P = B.psi_eval(qx);
            Mpsi = P.transpose() * qw.asDiagonal() * P;
            wpsi = P.transpose() * qw;
        } else {
            Mpsi = MatrixXd::Identity(n, n);
            Mpsi(0, 0) = 2.0;
            wpsi = VectorXd::Zero(n);
            wpsi[0] = 2.0;
        }
        const double jac = B.jacobian();
        B.mass_ = jac * (B.psi_inv_.transpose() * Mpsi * B.psi_inv_);
        B.mass_ = 0.5 * (B.mass_ + B.mass_.transpose().eval());
        B.int_weights_ = jac * (B.psi_inv_.transpose() * wpsi);

        // Collocation grid for the squared conditional.
        if (family == BasisFamily::Chebyshev2) {
            VectorXd zc(2 * n - 1);
            for (int m = 1; m <= 2 * n - 1; ++m)
                zc[m - 1] = std::cos(m * M_PI / (2.0 * n));
            B.cdf_nodes_ = VectorXd(zc.size());
            for (Eigen::Index j = 0; j < zc.size(); ++j)
                B.cdf_nodes_[j] = B.from_canonical(zc[j]);
        } else {
            VectorXd zc(2 * n);
            for (int m = 1; m <= 2 * n; ++m) zc[m - 1] = double(m) / n - 1.0;
            B.cdf_nodes_ = VectorXd(zc.size());
            for (Eigen::Index j = 0; j < zc.size(); ++j)
                B.cdf_nodes_[j] = B.from_canonical(zc[j]);
        }
        B.cdf_eval_ = B.eval(B.cdf_nodes_);
    }

    Eigen::LLT<MatrixXd> llt(B.mass_);
    if (llt.info() != Eigen::Success)
        throw std::runtime_error("mass matrix not SPD");
    B.chol_ = llt.matrixL();
    return B;
}

MatrixXd Basis1D::eval(const Eigen::Ref<const VectorXd>& points) const {
    const auto m = points.size();
    const double tol = 1e-12 * (b_ - a_);
    for (Eigen::Index i = 0; i < m; ++i)
        if (points[i] < a_ - tol || points[i] > b_ + tol)
            throw std::domain_error("evaluation point outside basis domain");
    MatrixXd out;
    if (family_ == BasisFamily::PiecewiseLinear) {
        out = MatrixXd::Zero(m, n_);
        const double h = (b_ - a_) / (n_ + 1);
        for (Eigen::Index i = 0; i < m; ++i) {
            double t = (std::clamp(points[i], a_, b_) - a_) / h - 1.0;
            if (t <= 0.0) {
                out(i, 0) = 1.0;  // clamped boundary cell
            } else if (t >= n_ - 1) {
                out(i, n_ - 1) = 1.0;
            } else {
                int c = std::min(int(t), n_ - 2);
                double s = t - c;
                out(i, c) = 1.0 - s;
                out(i, c + 1) = s;
            }
        }
    } else {
        VectorXd zeta(m);
        for (Eigen::Index i = 0; i < m; ++i)
            zeta[i] = std::clamp(to_canonical(points[i]), -1.0, 1.0);
        out = psi_eval(zeta) * psi_inv_;
    }
    return out;
}

VectorXd Basis1D::eval_one(double x) const {
    VectorXd p(1);
    p[0] = x;
    return eval(p).row(0);
}

}  // namespace dtt
