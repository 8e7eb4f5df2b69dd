#include "dtt/targets.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "dtt/rng.hpp"

namespace dtt {

namespace {
const double kNegInf = -std::numeric_limits<double>::infinity();

VectorXd batch_map(const MatrixXd& X,
                   const std::function<double(const VectorXd&)>& f) {
    VectorXd out(X.rows());
    for (Eigen::Index i = 0; i < X.rows(); ++i) out[i] = f(X.row(i).transpose());
    return out;
}
}  // namespace

TargetDensity target_gaussian(const MatrixXd& covariance, const VectorXd& lower,
                              const VectorXd& upper) {
    const int d = int(covariance.rows());
    Eigen::LLT<MatrixXd> llt(covariance);
    if (llt.info() != Eigen::Success)
        throw std::invalid_argument("target_gaussian: covariance not SPD");
    MatrixXd prec = llt.solve(MatrixXd::Identity(d, d));
    TargetDensity t;
    t.name = "gaussian";
    t.d = d;
    t.lower = lower;
    t.upper = upper;
    t.prior_is_indicator = true;
    auto quad = [prec](const VectorXd& x) { return -0.5 * x.dot(prec * x); };
    t.log_likelihood = [quad](const MatrixXd& X) { return batch_map(X, quad); };
    t.log_prior = [](const MatrixXd& X) { return VectorXd::Zero(X.rows()); };
    t.log_density = [t_inside = std::make_pair(lower, upper), quad,
                     d](const MatrixXd& X) {
        VectorXd out(X.rows());
        for (Eigen::Index i = 0; i < X.rows(); ++i) {
            VectorXd x = X.row(i).transpose();
            bool in = true;
            for (int k = 0; k < d; ++k)
                if (x[k] < t_inside.first[k] || x[k] > t_inside.second[k]) in = false;
            out[i] = in ? quad(x) : kNegInf;
        }
        return out;
    };
    return t;
}

// ---- predator-prey ---------------------------------------------------------

const double kPredatorPreyTrue[8] = {50, 5, 0.6, 100, 1.2, 25, 0.5, 0.3};
const double kPredatorPreyLower[8] = {30, 3, 0.36, 60, 0.72, 15, 0.3, 0.18};
const double kPredatorPreyUpper[8] = {80, 8, 0.96, 160, 1.92, 40, 0.8, 0.48};

MatrixXd predator_prey_forward(const VectorXd& x) {
    // x = [P0, Q0, r, K, s, a, u, v]; s is the predation rate, a the
    // half-saturation constant (prey-population units, so a ~ 25 at the
    // nominal point). RK4 with fixed step h = 25/600, observations every
    // 100 steps at t_i = (i-1) * 25/6, i = 1..13.
    const double r = x[2], K = x[3], s = x[4], a = x[5], u = x[6], v = x[7];
    const double h = 25.0 / 600.0;
    auto rhs = [&](double P, double Q, double& dP, double& dQ) {
        double inter = P * Q / (a + P);
        dP = r * P * (1.0 - P / K) - s * inter;
        dQ = u * inter - v * Q;
    };
    MatrixXd G(2, 13);
    double P = x[0], Q = x[1];
    G(0, 0) = P;
    G(1, 0) = Q;
    for (int obs = 1; obs <= 12; ++obs) {
        for (int step = 0; step < 100; ++step) {
            double k1p, k1q, k2p, k2q, k3p, k3q, k4p, k4q;
            rhs(P, Q, k1p, k1q);
            rhs(P + 0.5 * h * k1p, Q + 0.5 * h * k1q, k2p, k2q);
            rhs(P + 0.5 * h * k2p, Q + 0.5 * h * k2q, k3p, k3q);
            rhs(P + h * k3p, Q + h * k3q, k4p, k4q);
            P += h / 6.0 * (k1p + 2 * k2p + 2 * k3p + k4p);
            Q += h / 6.0 * (k1q + 2 * k2q + 2 * k3q + k4q);
            if (!std::isfinite(P) || !std::isfinite(Q) || std::abs(P) > 1e8 ||
                std::abs(Q) > 1e8) {
                return MatrixXd::Constant(2, 13,
                                          std::numeric_limits<double>::quiet_NaN());
            }
        }
        G(0, obs) = P;
        G(1, obs) = Q;
    }
    return G;
}

PredatorPreyData predator_prey_data(std::uint64_t seed, double sigma) {
    PredatorPreyData d;
    d.times = VectorXd(13);
    for (int i = 0; i < 13; ++i) d.times[i] = i * 25.0 / 6.0;
    VectorXd xt = Eigen::Map<const VectorXd>(kPredatorPreyTrue, 8);
    d.obs = predator_prey_forward(xt);
    Rng rng(seed, 0);
    for (int j = 0; j < 13; ++j)
        for (int i = 0; i < 2; ++i) d.obs(i, j) += sigma * rng.normal();
    return d;
}

TargetDensity target_predator_prey(const MatrixXd& obs, double sigma) {
    if (obs.rows() != 2 || obs.cols() != 13)
        throw std::invalid_argument("predator-prey data must be 2 x 13");
    TargetDensity t;
    t.name = "predator_prey";
    t.d = 8;
    t.lower = Eigen::Map<const VectorXd>(kPredatorPreyLower, 8);
    t.upper = Eigen::Map<const VectorXd>(kPredatorPreyUpper, 8);
    t.prior_is_indicator = true;
    const double inv2s2 = 1.0 / (2.0 * sigma * sigma);
    auto ll = [obs, inv2s2](const VectorXd& x) {
        MatrixXd G = predator_prey_forward(x);
        if (!G.allFinite()) return kNegInf;
        return -inv2s2 * (G - obs).squaredNorm();
    };
    t.log_likelihood = [ll](const MatrixXd& X) { return batch_map(X, ll); };
    t.log_prior = [](const MatrixXd& X) { return VectorXd::Zero(X.rows()); };
    t.log_density = [t2 = t, ll](const MatrixXd& X) {
        VectorXd out(X.rows());
        for (Eigen::Index i = 0; i < X.rows(); ++i) {
            VectorXd x = X.row(i).transpose();
            out[i] = t2.inside(x) ? ll(x) : kNegInf;
        }
        return out;
    };
    return t;
}

// ---- Lorenz-96 -------------------------------------------------------------

VectorXd lorenz96_forward(const VectorXd& x0, double T) {
    const int d = int(x0.size());
    const double h = 1e-3;
    const int steps = int(std::llround(T / h));
    VectorXd x = x0, k1(d), k2(d), k3(d), k4(d), tmp(d);
    auto rhs = [d](const VectorXd& s, VectorXd& out) {
        for (int i = 0; i < d; ++i) {
            int ip1 = (i + 1) % d, im1 = (i - 1 + d) % d, im2 = (i - 2 + d) % d;
            out[i] = (s[ip1] - s[im2]) * s[im1] - s[i] + 8.0;
        }
    };
    for (int s = 0; s < steps; ++s) {
        rhs(x, k1);
        tmp = x + 0.5 * h * k1;
        rhs(tmp, k2);
        tmp = x + 0.5 * h * k2;
        rhs(tmp, k3);
        tmp = x + h * k3;
        rhs(tmp, k4);
        x += h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
        if (!x.allFinite() || x.cwiseAbs().maxCoeff() > 1e8)
            return VectorXd::Constant(d / 2,
                                      std::numeric_limits<double>::quiet_NaN());
    }
    VectorXd obs(d / 2);
    for (int j = 0; j < d / 2; ++j) obs[j] = x[2 * j + 1];  // 1-based even states
    return obs;
}

VectorXd lorenz96_data(int d, std::uint64_t seed, double sigma, double T) {
    Rng rng(seed, 0);
    VectorXd xt(d);
    for (int i = 0; i < d; ++i) xt[i] = 1.0 + 1e-2 * rng.normal();
    VectorXd y = lorenz96_forward(xt, T);
    for (int i = 0; i < y.size(); ++i) y[i] += sigma * rng.normal();
    return y;
}

TargetDensity target_lorenz96(int d, const VectorXd& data, double sigma,
                              double T) {
    if (d % 2 != 0) throw std::invalid_argument("lorenz96: d must be even");
    if (data.size() != d / 2)
        throw std::invalid_argument("lorenz96: data must have d/2 entries");
    TargetDensity t;
    t.name = "lorenz96";
    t.d = d;
    t.lower = VectorXd::Constant(d, -10.0);
    t.upper = VectorXd::Constant(d, 10.0);
    const double inv2s2 = 1.0 / (2.0 * sigma * sigma);
    auto ll = [data, T, inv2s2](const VectorXd& x) {
        VectorXd G = lorenz96_forward(x, T);
        if (!G.allFinite()) return kNegInf;
        return -inv2s2 * (G - data).squaredNorm();
    };
    auto lp = [d](const VectorXd& x) {
        double s = 0.0;
        for (int k = 0; k < d; ++k) s += -0.5 * (x[k] - 1.0) * (x[k] - 1.0);
        return s;
    };
    t.log_likelihood = [ll](const MatrixXd& X) { return batch_map(X, ll); };
    t.log_prior = [lp](const MatrixXd& X) { return batch_map(X, lp); };
    t.log_density = [t2 = t, ll, lp](const MatrixXd& X) {
        VectorXd out(X.rows());
        for (Eigen::Index i = 0; i < X.rows(); ++i) {
            VectorXd x = X.row(i).transpose();
            out[i] = t2.inside(x) ? ll(x) + lp(x) : kNegInf;
        }
        return out;
    };
    return t;
}

TargetDensity temper(const TargetDensity& t, double beta, double prior_exponent) {
    if (!(beta > 0) || beta > 1)
        throw std::invalid_argument("temper: beta must be in (0,1]");
    if (!t.has_split() && prior_exponent != beta && !t.prior_is_indicator)
        throw std::invalid_argument("temper: prior/likelihood split required");
    TargetDensity out = t;
    out.name = t.name + "_tempered";
    if (t.has_split()) {
        auto ll = t.log_likelihood;
        auto lp = t.log_prior;
        out.log_density = [ll, lp, beta, prior_exponent, lo = t.lower,
                           up = t.upper, d = t.d,
                           indicator = t.prior_is_indicator](const MatrixXd& X) {
            VectorXd a = ll(X);
            VectorXd b = lp(X);
            VectorXd r(X.rows());
            for (Eigen::Index i = 0; i < X.rows(); ++i) {
                bool in = true;
                for (int k = 0; k < d; ++k)
                    if (X(i, k) < lo[k] || X(i, k) > up[k]) in = false;
                if (!in) {
                    r[i] = kNegInf;
                    continue;
                }
                r[i] = beta * a[i] + (indicator ? b[i] : prior_exponent * b[i]);
            }
            return r;
        };
    } else {
        auto base = t.log_density;
        out.log_density = [base, beta](const MatrixXd& X) {
            VectorXd v = base(X);
            for (Eigen::Index i = 0; i < v.size(); ++i)
                if (v[i] != kNegInf) v[i] *= beta;
            return v;
        };
    }
    return out;
}

}  // namespace dtt
