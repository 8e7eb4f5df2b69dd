#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <optional>

#include "dtt/dirt.hpp"

namespace dtt {

using HFn = std::function<double(const VectorXd&)>;

struct ChainResult {
    MatrixXd states;         // N x d
    double accept_rate = 0;  // accepted transitions / N
    double iact = 1;         // of the slowest coordinate, or of h if given
    std::optional<VectorXd> h_values;
    std::vector<std::uint8_t> accepted;  // per-transition accept flag
    long n_nonfinite = 0;    // proposals auto-rejected on non-finite target
    long target_evals = 0;
};

struct IsResult {
    MatrixXd samples;     // N x d
    VectorXd log_weights;
    double z_bar_n = 0;   // mean weight, via log-sum-exp
    double ess = 0;       // N (mean w)^2 / mean w^2
    std::optional<double> ratio_estimate;  // sum(w h) / sum(w)
    std::optional<VectorXd> h_values;
    long n_nonfinite = 0;
    long target_evals = 0;
};

/// Metropolised independence sampler with the DIRT pushforward as proposal.
/// The initial state is the first finite proposal, accepted unconditionally;
/// the chain then makes N transitions.
ChainResult irt_mcmc(const Dirt& dirt, const TargetDensity& target, int N,
                     std::uint64_t seed, const HFn& h = nullptr);

/// Self-normalized importance sampling with the DIRT proposal. Sample j is a
/// pure function of (seed, j), so the result is order-independent.
IsResult irt_is(const Dirt& dirt, const TargetDensity& target, int N,
                std::uint64_t seed, const HFn& h = nullptr);

/// Integrated autocorrelation time, 1 + 2 sum of autocorrelations with the
/// initial-positive-pair-sum truncation. A constant series returns N.
double iact(const VectorXd& series);

/// Delta-method MSE estimate of the self-normalized ratio estimator:
/// (1/N) mean(w^2 (h - I_N)^2) / (mean w)^2, shift-stable in the weights.
double mse_diagnostic(const IsResult& is_result, const VectorXd& h_values);

}  // namespace dtt
