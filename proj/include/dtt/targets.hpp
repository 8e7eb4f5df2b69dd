#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <string>

namespace dtt {

using Eigen::MatrixXd;
using Eigen::VectorXd;

/// Unnormalized target density on a box, batch-evaluable in log space.
/// log_density returns -inf outside the box and never NaN. The optional
/// likelihood/prior split supports tempering with separate exponents.
struct TargetDensity {
    std::string name;
    int d = 0;
    VectorXd lower, upper;
    std::function<VectorXd(const MatrixXd&)> log_density;
    std::function<VectorXd(const MatrixXd&)> log_likelihood;  // optional
    std::function<VectorXd(const MatrixXd&)> log_prior;       // optional
    bool prior_is_indicator = false;

    bool has_split() const { return bool(log_likelihood); }
    bool inside(const VectorXd& x) const {
        for (int k = 0; k < d; ++k)
            if (x[k] < lower[k] || x[k] > upper[k]) return false;
        return true;
    }
    double volume() const { return (upper - lower).prod(); }
};

/// Centered Gaussian with the given covariance, truncated to the box.
TargetDensity target_gaussian(const MatrixXd& covariance, const VectorXd& lower,
                              const VectorXd& upper);

// ---- predator-prey inverse problem (8 parameters, 13 observation times) ----
struct PredatorPreyData {
    VectorXd times;  // t_i = (i-1) * 25/6, 13 entries
    MatrixXd obs;    // 2 x 13 noisy (P, Q) observations
};
/// Forward map: (P, Q) trajectories at the 13 observation times.
MatrixXd predator_prey_forward(const VectorXd& x);
/// Synthetic data at the nominal parameter vector with N(0, sigma^2) noise.
PredatorPreyData predator_prey_data(std::uint64_t seed, double sigma);
extern const double kPredatorPreyTrue[8];
extern const double kPredatorPreyLower[8];
extern const double kPredatorPreyUpper[8];
TargetDensity target_predator_prey(const MatrixXd& obs, double sigma);

// ---- Lorenz-96 initial-condition problem ----------------------------------
/// Forward map: states with even (1-based) indices at time T.
VectorXd lorenz96_forward(const VectorXd& x0, double T);
VectorXd lorenz96_data(int d, std::uint64_t seed, double sigma, double T);
TargetDensity target_lorenz96(int d, const VectorXd& data, double sigma,
                              double T = 0.1);

/// Tempered target: beta * log-likelihood + prior_exponent * log-prior.
/// Indicator priors are unaffected by the exponent.
TargetDensity temper(const TargetDensity& t, double beta, double prior_exponent);

}  // namespace dtt
