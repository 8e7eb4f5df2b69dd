#pragma once

#include <Eigen/Dense>

#include "dtt/rng.hpp"

namespace dtt {

using Eigen::VectorXd;

/// Product-form reference measure on a per-dimension interval, with the
/// componentwise CDF map R (R pushes the reference to the uniform on [0,1]).
class Reference {
public:
    enum class Kind { Uniform, TruncatedNormal };

    static Reference uniform();
    static Reference truncated_normal(double bound = 4.0);

    Kind kind() const { return kind_; }
    double lo() const { return lo_; }
    double hi() const { return hi_; }
    double bound() const { return bound_; }

    // per-dimension maps
    double cdf(double u) const;
    double inv_cdf(double v) const;
    /// log f_U(u) for one coordinate (normalized density).
    double logpdf1(double u) const;

    VectorXd to_uniform(const VectorXd& u) const;
    VectorXd from_uniform(const VectorXd& v) const;
    /// log f_U over all coordinates (omega = 1, so this is the log ratio).
    double logpdf(const VectorXd& u) const;

    double sample1(Rng& rng) const { return inv_cdf(rng.uniform_open()); }

private:
    Kind kind_ = Kind::Uniform;
    double lo_ = 0.0, hi_ = 1.0;
    double bound_ = 0.0;     // sigma_b for truncated normal
    double log_norm_ = 0.0;  // log of the truncation normalizer
};

/// Standard normal CDF and its inverse (rational approximation plus Newton
/// polish; round-trip accurate to ~1e-14).
double normal_cdf(double x);
double normal_inv_cdf(double p);

}  // namespace dtt
