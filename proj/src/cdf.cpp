#include "dtt/cdf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace dtt {

Cdf1D pdf_to_cdf(const Basis1D& basis, const MatrixXd& D, double tail) {
    if (D.rows() != basis.n()) throw std::invalid_argument("coefficient rows != n");
    Cdf1D c;
    c.family_ = basis.family();
    c.a_ = basis.a();
    c.b_ = basis.b();
    c.jac_ = basis.jacobian();
    c.tail_ = tail;

    const int n = basis.n();
    if (c.family_ == BasisFamily::PiecewiseLinear) {
        // interior nodes: n+1 cells, the two outer cells carry the clamped
        // (constant) extension of the first/last nodal value
        c.h_ = (c.b_ - c.a_) / (n + 1);
        const int cells = n + 1;
        c.cellA_.resize(cells);
        c.cellB_.resize(cells);
        c.cellC_.resize(cells);
        c.cum_.assign(cells + 1, 0.0);
        for (int i = 0; i < cells; ++i) {
            int lo = std::max(i - 1, 0), hi = std::min(i, n - 1);
            c.cellA_[i] = D.row(lo).squaredNorm();
            c.cellC_[i] = D.row(hi).squaredNorm();
            c.cellB_[i] = D.row(lo).dot(D.row(hi));
            double mass = c.h_ * (c.cellA_[i] + c.cellB_[i] + c.cellC_[i]) / 3.0;
            c.cum_[i + 1] = c.cum_[i] + mass;
        }
        c.total_ = c.cum_[cells];
    } else {
        // Sample the squared density on the refined grid; it lies exactly in
        // the enclosing space, so the discrete transform below is exact.
        const MatrixXd& W = basis.cdf_eval_matrix();
        Eigen::VectorXd p = (W * D).rowwise().squaredNorm();
        p = p.cwiseMax(0.0);
        if (c.family_ == BasisFamily::Chebyshev2) {
            // p(zeta_m) interpolated by second-kind polynomials of degree
            // <= 2n-2 at the roots zeta_m = cos(m pi / 2n), m = 1..2n-1.
            // Coefficients via the associated discrete sine transform.
            const int M = 2 * n - 1;
            c.coef_ = Eigen::VectorXd::Zero(M);
            for (int k = 0; k < M; ++k) {
                double s = 0.0;
                for (int m = 1; m <= M; ++m) {
                    double th = m * M_PI / (2.0 * n);
                    s += p[m - 1] * std::sin(th) * std::sin((k + 1) * th);
                }
                c.coef_[k] = s / n;
            }
            double F1 = 0.0;
            for (int k = 0; k < M; ++k)
                if (k % 2 == 0) F1 += 2.0 * c.coef_[k] / (k + 1);
            c.total_ = c.jac_ * F1;
        } else {
            // Rectangular-rule Fourier analysis on 2n equispaced points,
            // exact for the cardinality-2n trigonometric space.
            const int M = 2 * n;
            c.cos_coef_ = Eigen::VectorXd::Zero(n + 1);
            c.sin_coef_ = Eigen::VectorXd::Zero(n);
            for (int m = 0; m < M; ++m) {
                double z = double(m + 1) / n - 1.0;
                c.cos_coef_[0] += p[m];
                for (int k = 1; k < n; ++k) {
                    c.cos_coef_[k] += p[m] * std::cos(k * M_PI * z);
                    c.sin_coef_[k] += p[m] * std::sin(k * M_PI * z);
                }
                c.cos_coef_[n] += p[m] * std::cos(n * M_PI * z);
            }
            c.cos_coef_[0] /= M;
            c.cos_coef_[n] /= M;
            for (int k = 1; k < n; ++k) {
                c.cos_coef_[k] /= n;
                c.sin_coef_[k] /= n;
            }
            c.total_ = c.jac_ * 2.0 * c.cos_coef_[0];
        }
    }
    c.total_ += tail * (c.b_ - c.a_);
    return c;
}

double Cdf1D::pdf_core(double x) const {
    if (family_ == BasisFamily::PiecewiseLinear) {
        double t = (std::clamp(x, a_, b_) - a_) / h_;
        if (!(t >= 0.0)) t = 0.0;  // NaN guard: int(t) below is UB otherwise
        int cell = std::min(int(t), int(cellA_.size()) - 1);
        double s = t - cell;
        return cellA_[cell] * (1 - s) * (1 - s) + 2.0 * cellB_[cell] * s * (1 - s) +
               cellC_[cell] * s * s;
    }
    double z = std::clamp(2.0 * (x - a_) / (b_ - a_) - 1.0, -1.0, 1.0);
    if (family_ == BasisFamily::Chebyshev2) {
        double th = std::acos(z);
        double sth = std::sin(th);
        double v = 0.0;
        if (sth < 1e-8) {
            // limit sin((k+1)th)/sin(th) -> (k+1) * (sign at -1 alternates)
            for (int k = 0; k < coef_.size(); ++k) {
                double lim = (k + 1.0);
                if (z < 0 && k % 2 == 1) lim = -lim;
                v += coef_[k] * lim;
            }
        } else {
            for (int k = 0; k < coef_.size(); ++k)
                v += coef_[k] * std::sin((k + 1) * th) / sth;
        }
        return std::max(v, 0.0);
    }
    double v = cos_coef_[0];
    const int n = int(cos_coef_.size()) - 1;
    for (int k = 1; k < n; ++k)
        v += cos_coef_[k] * std::cos(k * M_PI * z) + sin_coef_[k] * std::sin(k * M_PI * z);
    v += cos_coef_[n] * std::cos(n * M_PI * z);
    return std::max(v, 0.0);
}

double Cdf1D::eval_core(double x) const {
    if (family_ == BasisFamily::PiecewiseLinear) {
        double t = (std::clamp(x, a_, b_) - a_) / h_;
        if (!(t >= 0.0)) t = 0.0;  // NaN guard: int(t) below is UB otherwise
        int cell = std::min(int(t), int(cellA_.size()) - 1);
        double s = t - cell;
        double one_ms = 1.0 - s;
        double in_cell = h_ * (cellA_[cell] * (1.0 - one_ms * one_ms * one_ms) / 3.0 +
                               cellB_[cell] * (s * s - 2.0 * s * s * s / 3.0) +
                               cellC_[cell] * s * s * s / 3.0);
        return cum_[cell] + in_cell;
    }
    double z = std::clamp(2.0 * (x - a_) / (b_ - a_) - 1.0, -1.0, 1.0);
    if (family_ == BasisFamily::Chebyshev2) {
        // integral of the second-kind polynomial of degree k is
        // (T_{k+1}(z) - T_{k+1}(-1)) / (k+1)
        double th = std::acos(z);
        double F = 0.0;
        for (int k = 0; k < coef_.size(); ++k) {
            double tk1 = std::cos((k + 1) * th);
            double tk1m = (k % 2 == 0) ? -1.0 : 1.0;  // T_{k+1}(-1) = (-1)^{k+1}
            F += coef_[k] / (k + 1.0) * (tk1 - tk1m);
        }
        return jac_ * F;
    }
    double F = cos_coef_[0] * (z + 1.0);
    const int n = int(cos_coef_.size()) - 1;
    for (int k = 1; k < n; ++k) {
        double kp = k * M_PI;
        F += cos_coef_[k] / kp * std::sin(k * M_PI * z);
        F -= sin_coef_[k] / kp * (std::cos(k * M_PI * z) - std::cos(k * M_PI));
    }
    F += cos_coef_[n] / (n * M_PI) * std::sin(n * M_PI * z);
    return jac_ * F;
}

double Cdf1D::eval(double x) const {
    double F = eval_core(x) + tail_ * (std::clamp(x, a_, b_) - a_);
    return std::clamp(F, 0.0, total_);
}

double Cdf1D::pdf(double x) const { return pdf_core(x) + tail_; }

double Cdf1D::invert(double u) const {
    if (u < 0.0 || u > 1.0) throw std::domain_error("invert_cdf: u outside [0,1]");
    if (!(total_ > 0.0) || !std::isfinite(total_))
        throw std::runtime_error("invert_cdf: degenerate CDF mass");
    if (u <= 0.0) return a_;
    if (u >= 1.0) return b_;
    const double target = u * total_;
    double lo = a_, hi = b_;
    // Newton guarded by bisection: a step is rejected when it leaves the
    // bracket or fails to halve it, so the bracket shrinks geometrically
    // even across flat stretches where a secant/regula-falsi update stalls.
    double x = lo + (hi - lo) * u;
    double step_old = hi - lo;
    for (int it = 0; it < 200; ++it) {
        double fx = eval(x) - target;
        if (fx > 0)
            hi = x;
        else
            lo = x;
        if (std::abs(fx) <= 1e-12 * total_ || hi - lo < 1e-15 * (b_ - a_))
            return x;
        double p = pdf(x);
        double step = (p > 0) ? fx / p
                              : std::numeric_limits<double>::infinity();
        double xn = x - step;
        if (!(xn > lo && xn < hi) || std::abs(step) > 0.5 * step_old)
            xn = 0.5 * (lo + hi);
        step_old = hi - lo;
        x = xn;
    }
    return 0.5 * (lo + hi);
}

}  // namespace dtt
