#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "dtt/ftt.hpp"
#include "dtt/reference.hpp"

namespace dtt {

struct CrossOptions {
    int R0 = 10;               // initial interface rank
    int Rho = 0;               // random rank enrichment per sweep
    int MaxIt = 4;             // max number of directional sweeps
    double stop_tol = 1e-8;    // relative weighted-L2 change between sweeps
    double maxvol_tol = 1e-2;  // MaxVol dominance tolerance delta
    double truncation_tol = 0.0;  // relative SVD cutoff at interfaces (0 = keep)
    std::uint64_t rng_seed = 0;
    // first sweep runs right-to-left; subsequent sweeps keep alternating.
    // Successive build layers flip this so each layer re-adapts the interface
    // side its predecessor held fixed.
    bool start_backward = false;
    // initial reduced point sets carried over from a previous build; when
    // nonempty they take precedence over warm-start / random initialization.
    // A forward first sweep consumes init_right_sets, a backward one
    // init_left_sets.
    std::vector<MatrixXd> init_left_sets;
    std::vector<MatrixXd> init_right_sets;
};

/// Batch evaluator contract: rows of X are points, returns one value per row.
/// Must be a pure function of the point.
using BatchFn = std::function<VectorXd(const MatrixXd&)>;

struct CrossResult {
    Ftt ftt;
    long eval_count = 0;
    int sweeps = 0;
    double last_change = 0.0;  // relative change at the final sweep
    // final reduced point sets, reusable as the next build's initial sets
    std::vector<MatrixXd> left_sets;
    std::vector<MatrixXd> right_sets;
};

/// Alternating-sweep cross interpolation of f over the tensorized collocation
/// grid of the bases. Initial reduced sets come from the warm start FTT when
/// given, otherwise from reference draws snapped to the grid.
CrossResult tt_cross(const BatchFn& f, const std::vector<BasisPtr>& bases,
                     const CrossOptions& opts, const Reference& ref,
                     const Ftt* warm_start = nullptr);

/// rho independent reference draws, affinely mapped onto the domains of the
/// requested dimensions and snapped to the nearest collocation point.
MatrixXd enrich_points(const std::vector<BasisPtr>& bases, int first_dim,
                       int last_dim, const Reference& ref, int rho, Rng& rng);

}  // namespace dtt
