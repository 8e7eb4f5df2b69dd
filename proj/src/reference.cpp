#include "dtt/reference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace dtt {

double normal_cdf(double x) { return 0.5 * std::erfc(-x * M_SQRT1_2); }

namespace {
const double kLog2Pi = 1.8378770664093454835606594728112;

// Acklam's rational approximation for the probit function.
double probit_approx(double p) {
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425;
    double q, r;
    if (p < plow) {
        q = std::sqrt(-2.0 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    if (p > 1.0 - plow) {
        q = std::sqrt(-2.0 * std::log(1.0 - p));
        return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    q = p - 0.5;
    r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}
}  // namespace

double normal_inv_cdf(double p) {
    if (p <= 0.0) return -std::numeric_limits<double>::infinity();
    if (p >= 1.0) return std::numeric_limits<double>::infinity();
    double x = probit_approx(p);
    // two Newton steps on normal_cdf(x) = p restore full precision
    for (int i = 0; i < 2; ++i) {
        double e = normal_cdf(x) - p;
        double pdf = std::exp(-0.5 * (x * x + kLog2Pi));
        if (pdf > 0) x -= e / pdf;
    }
    return x;
}

Reference Reference::uniform() {
    Reference r;
    r.kind_ = Kind::Uniform;
    r.lo_ = 0.0;
    r.hi_ = 1.0;
    return r;
}

Reference Reference::truncated_normal(double bound) {
    if (!(bound > 0)) throw std::invalid_argument("reference bound must be > 0");
    Reference r;
    r.kind_ = Kind::TruncatedNormal;
    r.bound_ = bound;
    r.lo_ = -bound;
    r.hi_ = bound;
    r.log_norm_ = std::log(normal_cdf(bound) - normal_cdf(-bound));
    return r;
}

double Reference::cdf(double u) const {
    if (kind_ == Kind::Uniform) return std::clamp(u, 0.0, 1.0);
    double z = normal_cdf(-bound_);
    double v = (normal_cdf(u) - z) / std::exp(log_norm_);
    return std::clamp(v, 0.0, 1.0);
}

double Reference::inv_cdf(double v) const {
    v = std::clamp(v, 0.0, 1.0);
    if (kind_ == Kind::Uniform) return v;
    if (v <= 0.0) return lo_;
    if (v >= 1.0) return hi_;
    double p = normal_cdf(-bound_) + v * std::exp(log_norm_);
    double u = normal_inv_cdf(p);
    return std::clamp(u, lo_, hi_);
}

double Reference::logpdf1(double u) const {
    if (kind_ == Kind::Uniform) return 0.0;
    return -0.5 * (u * u + kLog2Pi) - log_norm_;
}

VectorXd Reference::to_uniform(const VectorXd& u) const {
    VectorXd v(u.size());
    for (Eigen::Index i = 0; i < u.size(); ++i) v[i] = cdf(u[i]);
    return v;
}

VectorXd Reference::from_uniform(const VectorXd& v) const {
    VectorXd u(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) u[i] = inv_cdf(v[i]);
    return u;
}

double Reference::logpdf(const VectorXd& u) const {
    double s = 0.0;
    for (Eigen::Index i = 0; i < u.size(); ++i) s += logpdf1(u[i]);
    return s;
}

}  // namespace dtt
