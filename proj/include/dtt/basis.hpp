#pragma once

#include <Eigen/Dense>
#include <memory>
#include <string>

namespace dtt {

using Eigen::MatrixXd;
using Eigen::VectorXd;

enum class BasisFamily { PiecewiseLinear, Chebyshev2, Fourier };

std::string family_name(BasisFamily f);
BasisFamily family_from_name(const std::string& s);

/// One-dimensional interpolation basis on [a,b] with unit weighting.
/// The basis functions phi^(i) satisfy phi^(i)(x_j) = delta_ij at the
/// collocation points x_j, so coefficient and nodal views coincide.
class Basis1D {
public:
    static Basis1D make(BasisFamily family, int n, double a, double b);

    BasisFamily family() const { return family_; }
    int n() const { return n_; }
    double a() const { return a_; }
    double b() const { return b_; }
    const VectorXd& nodes() const { return nodes_; }
    const MatrixXd& mass() const { return mass_; }
    /// Lower-triangular L with L*L^T = mass.
    const MatrixXd& mass_cholesky() const { return chol_; }
    /// Integrals of the basis functions over [a,b].
    const VectorXd& integral_weights() const { return int_weights_; }

    /// Batch evaluation: row i holds phi^(1..n)(points[i]).
    MatrixXd eval(const Eigen::Ref<const VectorXd>& points) const;
    VectorXd eval_one(double x) const;

    // Support data for the squared-density CDF construction.
    // Canonical coordinate is [-1,1] for the spectral families; piecewise
    // linear works in x directly and has no canonical grid.
    double to_canonical(double x) const { return 2.0 * (x - a_) / (b_ - a_) - 1.0; }
    double from_canonical(double z) const { return a_ + 0.5 * (z + 1.0) * (b_ - a_); }
    double jacobian() const { return 0.5 * (b_ - a_); }

    /// Grid (in x) where the squared conditional is sampled to build its CDF.
    const VectorXd& cdf_nodes() const { return cdf_nodes_; }
    /// eval(cdf_nodes), cached.
    const MatrixXd& cdf_eval_matrix() const { return cdf_eval_; }

private:
    BasisFamily family_;
    int n_;
    double a_, b_;
    VectorXd nodes_;
    MatrixXd mass_, chol_;
    VectorXd int_weights_;
    MatrixXd psi_inv_;  // inverse Vandermonde of the underlying spectral basis
    VectorXd cdf_nodes_;
    MatrixXd cdf_eval_;

    // Underlying spectral basis values at canonical points, one row per point.
    MatrixXd psi_eval(const Eigen::Ref<const VectorXd>& zeta) const;
};

using BasisPtr = std::shared_ptr<const Basis1D>;

}  // namespace dtt
