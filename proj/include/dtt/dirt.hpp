#pragma once

#include <Eigen/Dense>
#include <vector>

#include "dtt/cross.hpp"
#include "dtt/reference.hpp"
#include "dtt/sirt.hpp"
#include "dtt/targets.hpp"

namespace dtt {

struct BridgingSchedule {
    enum class PriorRule { SameAsBeta, Power };
    enum class RatioMode { Exact, Approximate };

    std::vector<double> betas;  // strictly increasing, betas.back() = 1
    PriorRule prior_rule = PriorRule::SameAsBeta;
    double prior_power = 1.0;  // prior exponent = beta^prior_power
    RatioMode ratio_mode = RatioMode::Approximate;

    int levels() const { return int(betas.size()); }  // = L + 1
    double prior_exponent(int k) const;
};

BridgingSchedule make_schedule_geometric(double beta0, double factor);
BridgingSchedule make_schedule_explicit(std::vector<double> betas);

struct DirtOptions {
    BasisFamily family = BasisFamily::PiecewiseLinear;
    int n = 16;
    CrossOptions cross;                    // broadcast to every layer
    std::vector<CrossOptions> per_layer;   // optional per-layer override
    double gamma = 1e-10;                  // SIRT tail mass per layer
    bool warm_start = true;                // reuse previous layer's FTT
};

struct BuildReport {
    std::vector<long> eval_counts;
    std::vector<double> z_hats;
    std::vector<double> shifts;
    std::vector<std::vector<int>> ranks;
    std::vector<double> betas;
};

/// Deep inverse Rosenblatt transport: layer 0 maps uniforms onto the target
/// box, layers >= 1 act on the reference box; the reference CDF map R links
/// consecutive layers.
struct Dirt {
    Reference reference;
    BridgingSchedule schedule;
    std::vector<Sirt> layers;     // layers[0] over the target box
    std::vector<double> shifts;   // per-layer log-scale guard applied in cross

    struct Fwd {
        VectorXd x;
        double logpdf;
    };

    int dim() const { return layers.empty() ? 0 : layers[0].g().dim(); }
    int num_layers() const { return int(layers.size()); }
    /// log of the cumulative normalizer over the first m layers (all if m<0).
    double log_z_bar(int m = -1) const;

    /// v uniform in [0,1]^d -> target draw plus the pushforward log-density.
    /// upto limits the composition to layers[0..upto] (default: all).
    Fwd irt(const VectorXd& v, int upto = -1) const;
    /// Composition applied to a reference-box point (R consumed first).
    Fwd irt_from_ref(const VectorXd& u, int upto = -1) const;
    VectorXd rosenblatt(const VectorXd& x, int upto = -1) const;
    double logpdf(const VectorXd& x, int upto = -1) const;
};

/// Ratio function that layer `layer_index` is built from: the square root of
/// the bridging-density ratio pulled back through layers 0..layer_index-1,
/// times sqrt(f_U). Includes the stored log-scale shift of built layers so the
/// values match what TT-cross saw. U rows are target-box points for
/// layer_index = 0, reference-box points otherwise.
VectorXd layer_ratio(const Dirt& dirt, int layer_index,
                     const TargetDensity& target, const MatrixXd& U);

Dirt build_dirt(const TargetDensity& target, const BridgingSchedule& schedule,
                const Reference& ref, const DirtOptions& opts,
                BuildReport* report = nullptr);

}  // namespace dtt
