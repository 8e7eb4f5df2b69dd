#include "dtt/dirt.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace dtt {

namespace {
const double kNegInf = -std::numeric_limits<double>::infinity();
}

double BridgingSchedule::prior_exponent(int k) const {
    return prior_rule == PriorRule::SameAsBeta ? betas[k]
                                               : std::pow(betas[k], prior_power);
}

BridgingSchedule make_schedule_geometric(double beta0, double factor) {
    if (!(beta0 > 0) || beta0 >= 1)
        throw std::invalid_argument("geometric schedule: beta0 must be in (0,1)");
    if (!(factor > 1)) throw std::invalid_argument("geometric schedule: factor <= 1");
    BridgingSchedule s;
    double b = beta0;
    while (b < 1.0 - 1e-12) {
        s.betas.push_back(b);
        b *= factor;
    }
    s.betas.push_back(1.0);
    return s;
}

BridgingSchedule make_schedule_explicit(std::vector<double> betas) {
    if (betas.empty()) throw std::invalid_argument("schedule: empty beta list");
    for (std::size_t i = 1; i < betas.size(); ++i)
        if (!(betas[i] > betas[i - 1]))
            throw std::invalid_argument("schedule: betas must increase strictly");
    if (std::abs(betas.back() - 1.0) > 1e-12)
        throw std::invalid_argument("schedule: betas must end at 1");
    betas.back() = 1.0;
    if (!(betas.front() > 0)) throw std::invalid_argument("schedule: beta_0 <= 0");
    BridgingSchedule s;
    s.betas = std::move(betas);
    return s;
}

double Dirt::log_z_bar(int m) const {
    if (m < 0) m = num_layers() - 1;
    double s = 0.0;
    for (int j = 0; j <= m; ++j) s += std::log(layers[j].z_total());
    return s;
}

Dirt::Fwd Dirt::irt(const VectorXd& v, int upto) const {
    const int m = upto < 0 ? num_layers() - 1 : upto;
    double acc = 0.0;
    VectorXd vcur = v;
    for (int j = m; j >= 1; --j) {
        Sirt::Fwd f = layers[j].irt(vcur);
        acc += f.logpdf - reference.logpdf(f.x);
        vcur = reference.to_uniform(f.x);
    }
    Sirt::Fwd f0 = layers[0].irt(vcur);
    acc += f0.logpdf;
    return {f0.x, acc};
}

Dirt::Fwd Dirt::irt_from_ref(const VectorXd& u, int upto) const {
    return irt(reference.to_uniform(u), upto);
}

VectorXd Dirt::rosenblatt(const VectorXd& x, int upto) const {
    const int m = upto < 0 ? num_layers() - 1 : upto;
    VectorXd v = layers[0].rosenblatt(x);
    for (int j = 1; j <= m; ++j)
        v = layers[j].rosenblatt(reference.from_uniform(v));
    return v;
}

double Dirt::logpdf(const VectorXd& x, int upto) const {
    const int m = upto < 0 ? num_layers() - 1 : upto;
    double acc = layers[0].logpdf(x);
    if (m >= 1) {
        VectorXd v = layers[0].rosenblatt(x);
        for (int j = 1; j <= m; ++j) {
            VectorXd w = reference.from_uniform(v);
            acc += layers[j].logpdf(w) - reference.logpdf(w);
            if (j < m) v = layers[j].rosenblatt(w);
        }
    }
    return acc;
}

namespace {

// beta * loglik + pexp * logprior on the box, -inf outside; falls back to
// beta * logdensity when the target has no split.
VectorXd tempered_logdensity(const TargetDensity& t, double beta, double pexp,
                             const MatrixXd& X) {
    VectorXd out(X.rows());
    if (t.has_split()) {
        VectorXd a = t.log_likelihood(X);
        VectorXd b = t.log_prior ? t.log_prior(X) : VectorXd::Zero(X.rows());
        for (Eigen::Index i = 0; i < X.rows(); ++i) {
            bool in = true;
            for (int k = 0; k < t.d; ++k)
                if (X(i, k) < t.lower[k] || X(i, k) > t.upper[k]) in = false;
            out[i] = !in ? kNegInf
                         : beta * a[i] +
                               (t.prior_is_indicator ? b[i] : pexp * b[i]);
        }
    } else {
        VectorXd v = t.log_density(X);
        for (Eigen::Index i = 0; i < X.rows(); ++i)
            out[i] = (v[i] == kNegInf) ? kNegInf : beta * v[i];
    }
    return out;
}

// log of the squared layer ratio, before the scale shift
VectorXd log_sq_ratio(const Dirt& dirt, int j, const TargetDensity& target,
                      const MatrixXd& U) {
    const BridgingSchedule& s = dirt.schedule;
    if (j == 0) return tempered_logdensity(target, s.betas[0], s.prior_exponent(0), U);

    const int m = int(U.rows());
    MatrixXd X(m, target.d);
    VectorXd prev_logpdf(m), ref_lp(m);
    for (int i = 0; i < m; ++i) {
        Dirt::Fwd f = dirt.irt_from_ref(U.row(i).transpose(), j - 1);
        X.row(i) = f.x.transpose();
        prev_logpdf[i] = f.logpdf;
        ref_lp[i] = dirt.reference.logpdf(U.row(i).transpose());
    }
    VectorXd out(m);
    if (s.ratio_mode == BridgingSchedule::RatioMode::Approximate) {
        double dbeta = s.betas[j] - s.betas[j - 1];
        double dpexp = s.prior_exponent(j) - s.prior_exponent(j - 1);
        VectorXd a = target.has_split() ? target.log_likelihood(X)
                                        : target.log_density(X);
        VectorXd b = (target.has_split() && target.log_prior)
                         ? target.log_prior(X)
                         : VectorXd::Zero(m);
        for (int i = 0; i < m; ++i) {
            if (a[i] == kNegInf) {
                out[i] = kNegInf;
                continue;
            }
            double lp = (target.has_split() && !target.prior_is_indicator)
                            ? dpexp * b[i]
                            : 0.0;
            out[i] = dbeta * a[i] + lp + ref_lp[i];
        }
    } else {
        VectorXd num = tempered_logdensity(target, s.betas[j],
                                           s.prior_exponent(j), X);
        double lzbar = dirt.log_z_bar(j - 1);
        for (int i = 0; i < m; ++i)
            out[i] = num[i] - (prev_logpdf[i] + lzbar) + ref_lp[i];
    }
    return out;
}

}  // namespace

VectorXd layer_ratio(const Dirt& dirt, int layer_index,
                     const TargetDensity& target, const MatrixXd& U) {
    VectorXd lq2 = log_sq_ratio(dirt, layer_index, target, U);
    double shift = layer_index < int(dirt.shifts.size())
                       ? dirt.shifts[layer_index]
                       : 0.0;
    VectorXd out(lq2.size());
    for (Eigen::Index i = 0; i < lq2.size(); ++i)
        out[i] = (lq2[i] == kNegInf) ? 0.0 : std::exp(0.5 * (lq2[i] - shift));
    return out;
}

Dirt build_dirt(const TargetDensity& target, const BridgingSchedule& schedule,
                const Reference& ref, const DirtOptions& opts,
                BuildReport* report) {
    if (schedule.levels() < 1) throw std::invalid_argument("build_dirt: empty schedule");
    const int d = target.d;
    Dirt out;
    out.reference = ref;
    out.schedule = schedule;

    // layer-0 bases over the target box; later layers over the reference box
    std::vector<BasisPtr> target_bases, ref_bases;
    for (int k = 0; k < d; ++k)
        target_bases.push_back(std::make_shared<Basis1D>(Basis1D::make(
            opts.family, opts.n, target.lower[k], target.upper[k])));
    for (int k = 0; k < d; ++k)
        ref_bases.push_back(std::make_shared<Basis1D>(
            Basis1D::make(opts.family, opts.n, ref.lo(), ref.hi())));

    if (report) *report = BuildReport{};
    CrossResult prev_res;
    for (int j = 0; j < schedule.levels(); ++j) {
        CrossOptions co = (j < int(opts.per_layer.size())) ? opts.per_layer[j]
                                                           : opts.cross;
        co.rng_seed = co.rng_seed + std::uint64_t(j) * 0x9e3779b9ULL;
        // reference-domain layers alternate sweep direction and inherit the
        // previous layer's refined point sets, so the single per-layer sweep
        // re-adapts the interface side its predecessor held fixed
        co.start_backward = (j >= 2 && j % 2 == 0);
        if (opts.warm_start && j >= 2) {
            if (co.start_backward)
                co.init_left_sets = prev_res.left_sets;
            else
                co.init_right_sets = prev_res.right_sets;
        }
        const auto& bases = (j == 0) ? target_bases : ref_bases;

        // log-scale shift: running max over the first batch, fixed afterwards
        auto shift = std::make_shared<double>(0.0);
        auto have_shift = std::make_shared<bool>(false);
        BatchFn f = [&, shift, have_shift](const MatrixXd& X) {
            VectorXd lq2 = log_sq_ratio(out, j, target, X);
            for (Eigen::Index i = 0; i < lq2.size(); ++i)
                if (std::isnan(lq2[i]) || lq2[i] == std::numeric_limits<double>::infinity()) {
                    std::ostringstream os;
                    os << "build_dirt: unbounded ratio at layer " << j
                       << " (beta=" << schedule.betas[j] << ")";
                    throw std::runtime_error(os.str());
                }
            if (!*have_shift) {
                double mx = kNegInf;
                for (Eigen::Index i = 0; i < lq2.size(); ++i)
                    mx = std::max(mx, lq2[i]);
                if (mx == kNegInf)
                    throw std::runtime_error(
                        "build_dirt: ratio vanishes on the pilot set at layer " +
                        std::to_string(j));
                *shift = mx;
                *have_shift = true;
            }
            VectorXd v(lq2.size());
            for (Eigen::Index i = 0; i < lq2.size(); ++i)
                v[i] = (lq2[i] == kNegInf) ? 0.0
                                           : std::exp(0.5 * (lq2[i] - *shift));
            return v;
        };

        const Ftt* warm = (opts.warm_start && j >= 2) ? &out.layers.back().g()
                                                      : nullptr;
        CrossResult res;
        try {
            res = tt_cross(f, bases, co, ref, warm);
        } catch (const std::exception& e) {
            std::ostringstream os;
            os << "build_dirt: TT-cross failed at layer " << j
               << " (beta=" << schedule.betas[j] << "): " << e.what();
            throw std::runtime_error(os.str());
        }
        out.layers.push_back(build_sirt(res.ftt, opts.gamma));
        out.shifts.push_back(*shift);
        if (report) {
            report->eval_counts.push_back(res.eval_count);
            report->z_hats.push_back(out.layers.back().z_hat());
            report->shifts.push_back(*shift);
            report->ranks.push_back(res.ftt.ranks());
            report->betas.push_back(schedule.betas[j]);
        }
        prev_res = std::move(res);
    }
    return out;
}

}  // namespace dtt
