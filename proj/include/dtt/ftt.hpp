#pragma once

#include <Eigen/Dense>
#include <vector>

#include "dtt/basis.hpp"
#include "dtt/tensor3.hpp"

namespace dtt {

/// Functional tensor train: f(x) = H_1(x_1) ... H_d(x_d) where
/// H_k(x) = sum_i phi_k^(i)(x) A_k[:,i,:]. Coefficient storage; for the
/// interpolation bases used here coefficients equal nodal values.
struct Ftt {
    std::vector<BasisPtr> bases;
    std::vector<Tensor3> cores;

    int dim() const { return int(cores.size()); }
    int rank(int k) const {  // r_k for k = 0..d
        return k == 0 ? cores.front().r0() : cores[k - 1].r1();
    }
    std::vector<int> ranks() const;
    int max_rank() const;

    /// H_k evaluated at x: (r_{k-1} x r_k) matrix.
    MatrixXd core_matrix(int k, double x) const;

    double eval(const Eigen::Ref<const VectorXd>& x) const;
    VectorXd eval_batch(const Eigen::Ref<const MatrixXd>& X) const;
};

/// Integrated cores Fbar_k[a,b] = integral of H_k over dimension k; their
/// product is the integral of the whole FTT.
std::vector<MatrixXd> integrate_cores(const Ftt& f);
double integral(const Ftt& f);

/// Weighted-L2 inner product and norm via mass-matrix core contractions.
double inner(const Ftt& f, const Ftt& g);
double norm2(const Ftt& f);
/// Relative weighted-L2 distance ||f-g||/||f||, clamped at 0 under round-off.
double rel_distance(const Ftt& f, const Ftt& g);

/// SVD rounding in the weighted L2 norm: result ranks <= input ranks and
/// ||f - round(f)|| <= tol * ||f||.
Ftt round(const Ftt& f, double tol);

}  // namespace dtt
