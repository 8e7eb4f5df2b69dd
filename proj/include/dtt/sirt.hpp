#pragma once

#include <Eigen/Dense>

#include "dtt/cdf.hpp"
#include "dtt/ftt.hpp"

namespace dtt {

/// Squared inverse Rosenblatt transport built from an FTT g of the target's
/// square root. The represented density is the mixture
///   fhat(x) = (g(x)^2 + gamma_abs) / (z_hat + gamma_abs * volume),
/// a uniform component of relative mass gamma keeps conditionals strictly
/// positive and importance weights bounded.
class Sirt {
public:
    struct Fwd {
        VectorXd x;
        double logpdf;
    };

    const Ftt& g() const { return g_; }
    double z_hat() const { return z_hat_; }
    double gamma() const { return gamma_rel_; }
    double gamma_abs() const { return gamma_abs_; }
    double volume() const { return volume_; }
    /// Total unnormalized mass including the uniform component.
    double z_total() const { return z_hat_ * (1.0 + gamma_rel_); }
    const std::vector<Tensor3>& marg_tensors() const { return marg_; }

    /// Inverse Rosenblatt map: uniforms to a target draw, with its log-density.
    Fwd irt(const VectorXd& u) const;
    /// Forward Rosenblatt map: target point to uniforms.
    VectorXd rosenblatt(const VectorXd& x) const;
    /// log of the (normalized) pushforward density at x.
    double logpdf(const VectorXd& x) const;

    /// Conditional coefficient matrix D_k given prefix products G_{<k} and
    /// the marginal value, scaled so the squared expansion has unit mass;
    /// for k = 0 the prefix is empty and D = B_1 / sqrt(z_hat).
    MatrixXd conditional_coeffs(int k, const Eigen::RowVectorXd& prefix,
                                double marg_value) const;

    friend Sirt build_sirt(const Ftt& g, double gamma);
    friend struct SirtSerde;

private:
    Ftt g_;
    std::vector<Tensor3> marg_;   // B_k of the marginalization recursion
    double z_hat_ = 0.0;          // integral of g^2
    double gamma_rel_ = 0.0;      // relative mass of the uniform component
    double gamma_abs_ = 0.0;      // gamma_rel * z_hat / volume
    double volume_ = 0.0;
    std::vector<double> suffix_vol_;  // prod_{j >= k} (b_j - a_j), size d+1

    // overflow-safe uniform tail of the k-th conditional given the prefix
    // log-scale ls; capped once it dominates coeff_sq_norm
    double scaled_tail(int k, double ls, double coeff_sq_norm) const;

    void finish_init();  // derived fields from g_, marg_, z_hat_, gamma_rel_
};

/// Backward marginalization recursion (Cholesky-weighted QR per dimension).
/// gamma is the relative mass of the uniform tail component.
Sirt build_sirt(const Ftt& g, double gamma = 1e-10);

}  // namespace dtt
