#include "dtt/debias.hpp"

#include <cmath>
#include <iostream>
#include <limits>
#include <stdexcept>

namespace dtt {

namespace {

const double kNegInf = -std::numeric_limits<double>::infinity();

struct Proposals {
    MatrixXd x;          // m x d
    VectorXd log_fhat;   // DIRT pushforward log-density at each proposal
    VectorXd log_target;
    long n_nonfinite = 0;
};

// proposal j is a pure function of (seed, j): substream j drives the
// reference draws, so samples are order-independent
Proposals draw_proposals(const Dirt& dirt, const TargetDensity& target, int m,
                         std::uint64_t seed) {
    const int d = dirt.dim();
    Proposals p;
    p.x.resize(m, d);
    p.log_fhat.resize(m);
    for (int j = 0; j < m; ++j) {
        Rng rng(seed, std::uint64_t(j) + 1);
        VectorXd u(d);
        for (int k = 0; k < d; ++k) u[k] = dirt.reference.sample1(rng);
        Dirt::Fwd f = dirt.irt_from_ref(u);
        p.x.row(j) = f.x.transpose();
        p.log_fhat[j] = f.logpdf;
    }
    p.log_target = target.log_density(p.x);
    for (int j = 0; j < m; ++j)
        if (!std::isfinite(p.log_target[j])) {  // NaN, +inf, or zero density
            p.log_target[j] = kNegInf;
            ++p.n_nonfinite;
        }
    if (p.n_nonfinite > 0)
        std::cerr << "debias: target non-finite at " << p.n_nonfinite << " of "
                  << m << " proposals (auto-rejected)\n";
    return p;
}

}  // namespace

double iact(const VectorXd& series) {
    const int n = int(series.size());
    if (n < 10) throw std::invalid_argument("iact: need at least 10 samples");
    if ((series.array() == series[0]).all())
        return double(n);  // constant series: degenerate
    const double mean = series.mean();
    VectorXd c = series.array() - mean;
    const double var = c.squaredNorm() / n;
    if (!(var > 0)) return double(n);
    auto rho = [&](int lag) {
        double s = 0.0;
        for (int i = 0; i + lag < n; ++i) s += c[i] * c[i + lag];
        return s / (n * var);
    };
    double tau = 1.0;
    for (int m = 0; 2 * m + 1 < n; ++m) {
        double pair = rho(2 * m) + rho(2 * m + 1);
        if (m > 0 && pair <= 0) break;
        tau += (m == 0) ? 2.0 * (pair - 1.0) : 2.0 * pair;  // rho(0) = 1
    }
    return std::max(tau, 1.0);
}

ChainResult irt_mcmc(const Dirt& dirt, const TargetDensity& target, int N,
                     std::uint64_t seed, const HFn& h) {
    if (N < 1) throw std::invalid_argument("irt_mcmc: N must be >= 1");
    if (dirt.num_layers() == 0) throw std::invalid_argument("irt_mcmc: empty dirt");
    Proposals p = draw_proposals(dirt, target, N + 1, seed);

    int cur = -1;  // initial state: first finite proposal, taken as accepted
    for (int j = 0; j <= N && cur < 0; ++j)
        if (p.log_target[j] != kNegInf) cur = j;
    if (cur < 0)
        throw std::runtime_error("irt_mcmc: target non-finite at every proposal");

    ChainResult r;
    r.states.resize(N, dirt.dim());
    r.n_nonfinite = p.n_nonfinite;
    r.target_evals = N + 1;
    Rng accept_rng(seed, 0);
    long accepted = 0;
    r.accepted.assign(N, 0);
    for (int t = 0; t < N; ++t) {
        const int j = t + 1;
        if (j != cur) {  // the initial state consumed proposal `cur`
            double log_alpha = (p.log_target[j] - p.log_target[cur]) +
                               (p.log_fhat[cur] - p.log_fhat[j]);
            if (p.log_target[j] != kNegInf &&
                std::log(accept_rng.uniform_open()) < log_alpha) {
                cur = j;
                ++accepted;
                r.accepted[t] = 1;
            }
        } else {
            ++accepted;
            r.accepted[t] = 1;
        }
        r.states.row(t) = p.x.row(cur);
    }
    r.accept_rate = double(accepted) / N;

    if (h) {
        VectorXd hv(N);
        for (int t = 0; t < N; ++t) hv[t] = h(r.states.row(t).transpose());
        r.h_values = hv;
        r.iact = N >= 10 ? iact(hv) : 1.0;
    } else if (N >= 10) {
        double worst = 1.0;
        for (int k = 0; k < dirt.dim(); ++k)
            worst = std::max(worst, iact(r.states.col(k)));
        r.iact = worst;
    }
    return r;
}

IsResult irt_is(const Dirt& dirt, const TargetDensity& target, int N,
                std::uint64_t seed, const HFn& h) {
    if (N < 1) throw std::invalid_argument("irt_is: N must be >= 1");
    if (dirt.num_layers() == 0) throw std::invalid_argument("irt_is: empty dirt");
    Proposals p = draw_proposals(dirt, target, N, seed);

    IsResult r;
    r.samples = p.x;
    r.log_weights = p.log_target - p.log_fhat;
    for (int j = 0; j < N; ++j)
        if (p.log_target[j] == kNegInf) r.log_weights[j] = kNegInf;
    r.n_nonfinite = p.n_nonfinite;
    r.target_evals = N;

    double m = r.log_weights.maxCoeff();
    if (m == kNegInf)
        throw std::runtime_error("irt_is: all importance weights are zero");
    double s1 = 0.0, s2 = 0.0, sh = 0.0;
    VectorXd hv;
    if (h) {
        hv.resize(N);
        for (int j = 0; j < N; ++j) hv[j] = h(p.x.row(j).transpose());
    }
    for (int j = 0; j < N; ++j) {
        double w = (r.log_weights[j] == kNegInf)
                       ? 0.0
                       : std::exp(r.log_weights[j] - m);
        s1 += w;
        s2 += w * w;
        if (h) sh += w * hv[j];
    }
    r.z_bar_n = std::exp(m + std::log(s1 / N));
    r.ess = s1 * s1 / s2;
    if (h) {
        r.ratio_estimate = sh / s1;
        r.h_values = hv;
    }
    return r;
}

double mse_diagnostic(const IsResult& is_result, const VectorXd& h_values) {
    const int n = int(is_result.log_weights.size());
    if (h_values.size() != n)
        throw std::invalid_argument("mse_diagnostic: h length mismatch");
    double m = is_result.log_weights.maxCoeff();
    if (m == kNegInf) throw std::invalid_argument("mse_diagnostic: zero weights");
    double s1 = 0.0, sh = 0.0;
    for (int j = 0; j < n; ++j) {
        double w = (is_result.log_weights[j] == kNegInf)
                       ? 0.0
                       : std::exp(is_result.log_weights[j] - m);
        s1 += w;
        sh += w * h_values[j];
    }
    const double ratio = sh / s1;
    double num = 0.0;
    for (int j = 0; j < n; ++j) {
        double w = (is_result.log_weights[j] == kNegInf)
                       ? 0.0
                       : std::exp(is_result.log_weights[j] - m);
        double dev = h_values[j] - ratio;
        num += w * w * dev * dev;
    }
    const double wbar = s1 / n;
    return (num / n) / (n * wbar * wbar);
}

}  // namespace dtt
