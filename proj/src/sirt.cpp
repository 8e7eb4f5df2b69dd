#include "dtt/sirt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace dtt {

namespace {

void thin_qr_nonneg(const MatrixXd& A, MatrixXd& Q, MatrixXd& R) {
    const Eigen::Index k = std::min(A.rows(), A.cols());
    Eigen::HouseholderQR<MatrixXd> qr(A);
    Q = qr.householderQ() * MatrixXd::Identity(A.rows(), k);
    R = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
    for (Eigen::Index i = 0; i < k; ++i)
        if (R(i, i) < 0) {
            R.row(i) = -R.row(i);
            Q.col(i) = -Q.col(i);
        }
}

double log_add(double a, double b) {
    if (a == -std::numeric_limits<double>::infinity()) return b;
    if (b == -std::numeric_limits<double>::infinity()) return a;
    double m = std::max(a, b);
    return m + std::log(std::exp(a - m) + std::exp(b - m));
}

}  // namespace

void Sirt::finish_init() {
    const int d = g_.dim();
    volume_ = 1.0;
    suffix_vol_.assign(d + 1, 1.0);
    for (int k = d - 1; k >= 0; --k) {
        suffix_vol_[k] = suffix_vol_[k + 1] * (g_.bases[k]->b() - g_.bases[k]->a());
    }
    volume_ = suffix_vol_[0];
    gamma_abs_ = gamma_rel_ * z_hat_ / volume_;
}

Sirt build_sirt(const Ftt& g, double gamma) {
    if (gamma < 0) throw std::invalid_argument("build_sirt: gamma must be >= 0");
    const int d = g.dim();
    Sirt s;
    s.g_ = g;
    s.gamma_rel_ = gamma;
    s.marg_.assign(d, Tensor3());
    s.marg_[d - 1] = g.cores[d - 1];
    for (int k = d - 1; k >= 1; --k) {
        const Tensor3& B = s.marg_[k];
        const MatrixXd& L = g.bases[k]->mass_cholesky();
        const int n = B.n();
        // C[a, tau, l] = sum_i B[a, i, l] L(i, tau)
        MatrixXd C(B.r0(), std::ptrdiff_t(n) * B.r1());
        auto Br = B.right_unfold();
        for (int b = 0; b < B.r1(); ++b)
            C.middleCols(std::ptrdiff_t(b) * n, n) =
                Br.middleCols(std::ptrdiff_t(b) * n, n) * L;
        MatrixXd Q, R;
        thin_qr_nonneg(C.transpose(), Q, R);  // R maps alpha_{k-1} -> ell
        const Tensor3& A = g.cores[k - 1];
        MatrixXd newB = A.left_unfold() * R.transpose();
        s.marg_[k - 1] =
            Tensor3::from_left_unfold(newB, A.r0(), A.n(), int(R.rows()));
    }
    {
        const Tensor3& B = s.marg_[0];
        const MatrixXd& L = g.bases[0]->mass_cholesky();
        const int n = B.n();
        MatrixXd C(B.r0(), std::ptrdiff_t(n) * B.r1());
        auto Br = B.right_unfold();
        for (int b = 0; b < B.r1(); ++b)
            C.middleCols(std::ptrdiff_t(b) * n, n) =
                Br.middleCols(std::ptrdiff_t(b) * n, n) * L;
        s.z_hat_ = C.squaredNorm();
    }
    // gamma is relative to z_hat, so a vanishing z_hat cannot be regularized
    if (s.z_hat_ <= 0.0)
        throw std::runtime_error("build_sirt: approximation has zero mass");
    s.finish_init();
    return s;
}

// Uniform tail of the k-th conditional, rescaled to the normalized prefix
// (prefix products are tracked as gp * exp(ls)).  Computed in log scale:
// exp(-2 ls) alone can overflow when the prefix has decayed by hundreds of
// logs, at which point the conditional is numerically uniform anyway, so the
// tail is capped once it dominates the squared-coefficient mass.
double Sirt::scaled_tail(int k, double ls, double coeff_sq_norm) const {
    if (gamma_abs_ <= 0.0) return 0.0;
    double lt = std::log(gamma_abs_ * suffix_vol_[k + 1]) - 2.0 * ls;
    double lcap = std::log(std::max(coeff_sq_norm, 1e-300)) + 60.0;
    return std::exp(std::min(lt, lcap));
}

MatrixXd Sirt::conditional_coeffs(int k, const Eigen::RowVectorXd& prefix,
                                  double marg_value) const {
    const Tensor3& B = marg_[k];
    Eigen::RowVectorXd m;
    if (k == 0) {
        m = B.right_unfold().row(0);
        marg_value = z_hat_;
    } else {
        m = prefix * B.right_unfold();
    }
    if (!(marg_value > 0))
        throw std::invalid_argument("conditional_coeffs: nonpositive marginal");
    Eigen::Map<const MatrixXd> M(m.data(), B.n(), B.r1());
    // the density is quadratic in the coefficients, so unit mass needs the
    // square root of the marginal normalizer
    return M / std::sqrt(marg_value);
}

Sirt::Fwd Sirt::irt(const VectorXd& u) const {
    const int d = g_.dim();
    if (u.size() != d) throw std::invalid_argument("irt: wrong dimension");
    VectorXd x(d);
    Eigen::RowVectorXd gp = Eigen::RowVectorXd::Ones(1);
    double ls = 0.0;  // prefix products are gp * exp(ls)
    for (int k = 0; k < d; ++k) {
        const Tensor3& B = marg_[k];
        Eigen::RowVectorXd m = gp * B.right_unfold();
        Eigen::Map<const MatrixXd> M(m.data(), B.n(), B.r1());
        double tail = scaled_tail(k, ls, m.squaredNorm());
        Cdf1D cdf = pdf_to_cdf(*g_.bases[k], M, tail);
        x[k] = cdf.invert(std::clamp(u[k], 0.0, 1.0));
        gp = gp * g_.core_matrix(k, x[k]);
        double nm = gp.norm();
        if (nm > 0) {
            gp /= nm;
            ls += std::log(nm);
        }
    }
    double lg2 = (gp(0) != 0.0)
                     ? 2.0 * (ls + std::log(std::abs(gp(0))))
                     : -std::numeric_limits<double>::infinity();
    double lgamma = gamma_abs_ > 0 ? std::log(gamma_abs_)
                                   : -std::numeric_limits<double>::infinity();
    double logpdf = log_add(lg2, lgamma) - std::log(z_total());
    return {x, logpdf};
}

VectorXd Sirt::rosenblatt(const VectorXd& x) const {
    const int d = g_.dim();
    if (x.size() != d) throw std::invalid_argument("rosenblatt: wrong dimension");
    VectorXd u(d);
    Eigen::RowVectorXd gp = Eigen::RowVectorXd::Ones(1);
    double ls = 0.0;
    for (int k = 0; k < d; ++k) {
        const Tensor3& B = marg_[k];
        Eigen::RowVectorXd m = gp * B.right_unfold();
        Eigen::Map<const MatrixXd> M(m.data(), B.n(), B.r1());
        double tail = scaled_tail(k, ls, m.squaredNorm());
        Cdf1D cdf = pdf_to_cdf(*g_.bases[k], M, tail);
        u[k] = std::clamp(cdf.eval(x[k]) / cdf.total_mass(), 0.0, 1.0);
        gp = gp * g_.core_matrix(k, x[k]);
        double nm = gp.norm();
        if (nm > 0) {
            gp /= nm;
            ls += std::log(nm);
        }
    }
    return u;
}

double Sirt::logpdf(const VectorXd& x) const {
    const int d = g_.dim();
    Eigen::RowVectorXd gp = Eigen::RowVectorXd::Ones(1);
    double ls = 0.0;
    for (int k = 0; k < d; ++k) {
        gp = gp * g_.core_matrix(k, x[k]);
        double nm = gp.norm();
        if (nm > 0) {
            gp /= nm;
            ls += std::log(nm);
        }
    }
    double lg2 = (gp(0) != 0.0)
                     ? 2.0 * (ls + std::log(std::abs(gp(0))))
                     : -std::numeric_limits<double>::infinity();
    double lgamma = gamma_abs_ > 0 ? std::log(gamma_abs_)
                                   : -std::numeric_limits<double>::infinity();
    return log_add(lg2, lgamma) - std::log(z_total());
}

}  // namespace dtt
