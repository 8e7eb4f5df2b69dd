#include "dtt/oracle.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "dtt/quadrature.hpp"

namespace dtt {

namespace {
const double kNegInf = -std::numeric_limits<double>::infinity();

// visit every tensor-grid point with its product weight
template <typename Fn>
void for_each_node(const QuadGrid& g, Fn&& fn) {
    const int d = g.d;
    std::vector<int> idx(d, 0);
    VectorXd x(d);
    for (;;) {
        double w = 1.0;
        for (int k = 0; k < d; ++k) {
            x[k] = g.nodes[k][idx[k]];
            w *= g.weights[k][idx[k]];
        }
        fn(x, w);
        int k = 0;
        while (k < d && ++idx[k] == g.nodes[k].size()) idx[k++] = 0;
        if (k == d) break;
    }
}
}  // namespace

QuadGrid QuadGrid::make(const VectorXd& lower, const VectorXd& upper, int q) {
    const int d = int(lower.size());
    if (d < 1 || d > 4)
        throw std::invalid_argument("QuadGrid: dimension must be in [1,4]");
    if (upper.size() != d) throw std::invalid_argument("QuadGrid: box mismatch");
    if (q < 1) throw std::invalid_argument("QuadGrid: order must be >= 1");
    QuadGrid g;
    g.d = d;
    for (int k = 0; k < d; ++k) {
        auto [x, w] = gauss_legendre(q, lower[k], upper[k]);
        g.nodes.push_back(x);
        g.weights.push_back(w);
    }
    return g;
}

long QuadGrid::size() const {
    long t = 1;
    for (const auto& n : nodes) t *= long(n.size());
    return t;
}

double quad_integral(const PointFn& f, const QuadGrid& grid) {
    double acc = 0.0;
    for_each_node(grid, [&](const VectorXd& x, double w) {
        double v = f(x);
        if (std::isnan(v))
            throw std::runtime_error("quad_integral: NaN integrand");
        acc += w * v;
    });
    return acc;
}

Divergences divergences(const TargetDensity& target, const PointFn& approx_logpdf,
                        const QuadGrid& grid, const PointFn& sqrt_surrogate) {
    if (grid.d > 3)
        throw std::invalid_argument("divergences: dimension must be <= 3");
    if (grid.d != target.d)
        throw std::invalid_argument("divergences: grid/target dimension mismatch");

    // pass 1: target normalizer and approximation mass
    double z = 0.0, z_hat = 0.0;
    for_each_node(grid, [&](const VectorXd& x, double w) {
        MatrixXd X = x.transpose();
        double lt = target.log_density(X)[0];
        double la = approx_logpdf(x);
        if (std::isnan(lt) || std::isnan(la))
            throw std::runtime_error("divergences: NaN log-density");
        if (lt != kNegInf) z += w * std::exp(lt);
        if (la != kNegInf) z_hat += w * std::exp(la);
    });
    if (!(z > 0)) throw std::runtime_error("divergences: target mass vanishes");

    const double lz = std::log(z);
    double h2 = 0.0, tv = 0.0, chi = 0.0, eps2 = 0.0;
    for_each_node(grid, [&](const VectorXd& x, double w) {
        MatrixXd X = x.transpose();
        double lt = target.log_density(X)[0];
        double lf = (lt == kNegInf) ? kNegInf : lt - lz;  // normalized target
        double la = approx_logpdf(x);
        double f = lf == kNegInf ? 0.0 : std::exp(lf);
        double fh = la == kNegInf ? 0.0 : std::exp(la);
        double ds = std::sqrt(f) - std::sqrt(fh);
        h2 += w * ds * ds;
        tv += w * std::abs(f - fh);
        if (f > 0) {
            // vanishing approximation under positive target mass: the
            // chi-square divergence is infinite, the other metrics survive
            chi = (fh <= 0) ? std::numeric_limits<double>::infinity()
                            : chi + w * f * f / fh;
        }
        if (sqrt_surrogate) {
            double dg = sqrt_surrogate(x) -
                        (lt == kNegInf ? 0.0 : std::exp(0.5 * lt));
            eps2 += w * dg * dg;
        }
    });

    Divergences out;
    out.z = z;
    out.z_hat = z_hat;
    out.hellinger = std::sqrt(std::max(0.5 * h2, 0.0));
    out.tv = 0.5 * tv;
    out.chi2 = std::max(chi - 1.0, 0.0);
    out.l2_sqrt_err = sqrt_surrogate ? std::sqrt(std::max(eps2, 0.0)) : 0.0;
    return out;
}

}  // namespace dtt
