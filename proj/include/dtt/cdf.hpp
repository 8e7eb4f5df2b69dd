#pragma once

#include <Eigen/Dense>
#include <vector>

#include "dtt/basis.hpp"

namespace dtt {

/// Exact antiderivative of a squared-expansion conditional density
///   pdf(x) = sum_l (phi(x) . D[:,l])^2 + tail
/// on the basis domain. The squared function lies in an enclosing space with
/// a closed-form integral (degree 2n-2 polynomials, cardinality-2n
/// trigonometric space, or piecewise quadratics), so eval() is exact up to
/// round-off. tail is a constant density used for gamma regularization.
class Cdf1D {
public:
    double a() const { return a_; }
    double b() const { return b_; }
    double total_mass() const { return total_; }
    double tail() const { return tail_; }

    /// Unnormalized CDF: mass of [a, x]. Nondecreasing, eval(a)=0,
    /// eval(b)=total_mass.
    double eval(double x) const;
    /// Density at x (tail included); the derivative of eval.
    double pdf(double x) const;
    /// Root of eval(x)/total_mass = u for u in [0,1], to 1e-12 in u.
    double invert(double u) const;

    friend Cdf1D pdf_to_cdf(const Basis1D& basis, const MatrixXd& D, double tail);

private:
    BasisFamily family_;
    double a_ = 0, b_ = 1;
    double jac_ = 1;     // canonical-to-x scale for the spectral families
    double tail_ = 0;    // constant density added on [a,b]
    double total_ = 0;   // includes the tail mass
    // chebyshev2: coef_[k] multiplies the second-kind polynomial of degree k,
    //   k = 0..2n-2. fourier: cos_coef_[0..n], sin_coef_[1..n-1].
    Eigen::VectorXd coef_, cos_coef_, sin_coef_;
    // piecewise-linear: per-cell quadratic (A,B,C) in the local coordinate
    // and cumulative cell masses.
    double h_ = 0;
    std::vector<double> cellA_, cellB_, cellC_, cum_;

    double eval_core(double x) const;  // without the tail term
    double pdf_core(double x) const;
};

/// Build the CDF of the squared conditional with coefficient matrix D (n x r).
Cdf1D pdf_to_cdf(const Basis1D& basis, const MatrixXd& D, double tail = 0.0);

}  // namespace dtt
