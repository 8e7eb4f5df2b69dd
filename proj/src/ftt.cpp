#include "dtt/ftt.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <stdexcept>

namespace dtt {

std::vector<int> Ftt::ranks() const {
    std::vector<int> r(dim() + 1);
    r[0] = cores.front().r0();
    for (int k = 0; k < dim(); ++k) r[k + 1] = cores[k].r1();
    return r;
}

int Ftt::max_rank() const {
    int m = 1;
    for (const auto& c : cores) m = std::max(m, std::max(c.r0(), c.r1()));
    return m;
}

MatrixXd Ftt::core_matrix(int k, double x) const {
    const Tensor3& A = cores[k];
    VectorXd phi = bases[k]->eval_one(x);
    MatrixXd M(A.r0(), A.r1());
    auto R = A.right_unfold();
    for (int b = 0; b < A.r1(); ++b)
        M.col(b) = R.middleCols(std::ptrdiff_t(b) * A.n(), A.n()) * phi;
    return M;
}

double Ftt::eval(const Eigen::Ref<const VectorXd>& x) const {
    if (x.size() != dim()) throw std::invalid_argument("eval: wrong dimension");
    Eigen::RowVectorXd v = Eigen::RowVectorXd::Ones(1);
    for (int k = 0; k < dim(); ++k) {
        const Tensor3& A = cores[k];
        VectorXd phi = bases[k]->eval_one(x[k]);
        Eigen::RowVectorXd w = v * A.right_unfold();  // cols indexed (i, beta)
        Eigen::Map<const MatrixXd> W(w.data(), A.n(), A.r1());
        v = (W.transpose() * phi).transpose();
    }
    return v(0);
}

VectorXd Ftt::eval_batch(const Eigen::Ref<const MatrixXd>& X) const {
    VectorXd out(X.rows());
    for (Eigen::Index i = 0; i < X.rows(); ++i) out[i] = eval(X.row(i).transpose());
    return out;
}

std::vector<MatrixXd> integrate_cores(const Ftt& f) {
    std::vector<MatrixXd> F;
    F.reserve(f.dim());
    for (int k = 0; k < f.dim(); ++k) {
        const Tensor3& A = f.cores[k];
        const VectorXd& w = f.bases[k]->integral_weights();
        MatrixXd M(A.r0(), A.r1());
        auto R = A.right_unfold();
        for (int b = 0; b < A.r1(); ++b)
            M.col(b) = R.middleCols(std::ptrdiff_t(b) * A.n(), A.n()) * w;
        F.push_back(std::move(M));
    }
    return F;
}

double integral(const Ftt& f) {
    auto F = integrate_cores(f);
    MatrixXd P = F[0];
    for (std::size_t k = 1; k < F.size(); ++k) P = P * F[k];
    return P(0, 0);
}

double inner(const Ftt& f, const Ftt& g) {
    if (f.dim() != g.dim()) throw std::invalid_argument("inner: dimension mismatch");
    MatrixXd V = MatrixXd::Ones(1, 1);
    for (int k = 0; k < f.dim(); ++k) {
        const Tensor3& Af = f.cores[k];
        const Tensor3& Ag = g.cores[k];
        const MatrixXd& M = f.bases[k]->mass();
        const int n = Af.n();
        // Gm[ag, i, bg] = sum_j M(i,j) Ag[ag, j, bg]
        MatrixXd Gm(Ag.r0(), std::ptrdiff_t(n) * Ag.r1());
        auto Rg = Ag.right_unfold();
        for (int b = 0; b < Ag.r1(); ++b)
            Gm.middleCols(std::ptrdiff_t(b) * n, n) =
                Rg.middleCols(std::ptrdiff_t(b) * n, n) * M.transpose();
        // U[ag, i, bf] = sum_af V[af, ag] Af[af, i, bf]
        MatrixXd U = V.transpose() * Af.right_unfold();
        Eigen::Map<const MatrixXd> Ul(U.data(), std::ptrdiff_t(Ag.r0()) * n, Af.r1());
        Eigen::Map<const MatrixXd> Gl(Gm.data(), std::ptrdiff_t(Ag.r0()) * n, Ag.r1());
        V = Ul.transpose() * Gl;  // (bf x bg)
    }
    return V(0, 0);
}

double norm2(const Ftt& f) { return std::sqrt(std::max(inner(f, f), 0.0)); }

double rel_distance(const Ftt& f, const Ftt& g) {
    // contract the explicit difference train rather than nf2 - 2 ip + ng2,
    // which cancels catastrophically once f and g nearly coincide
    if (f.dim() != g.dim())
        throw std::invalid_argument("rel_distance: dimension mismatch");
    const int d = f.dim();
    Ftt h;
    h.bases = f.bases;
    for (int k = 0; k < d; ++k) {
        const Tensor3 &A = f.cores[k], &B = g.cores[k];
        if (A.n() != B.n())
            throw std::invalid_argument("rel_distance: basis size mismatch");
        const int r0 = (k == 0) ? 1 : A.r0() + B.r0();
        const int r1 = (k == d - 1) ? 1 : A.r1() + B.r1();
        Tensor3 t(r0, A.n(), r1);  // zero-initialized
        const int oa = (k == 0) ? 0 : A.r0();
        const int ob = (k == d - 1) ? 0 : A.r1();
        const double s = (k == 0) ? -1.0 : 1.0;  // one sign flip overall
        for (int i = 0; i < A.n(); ++i) {
            for (int a = 0; a < A.r0(); ++a)
                for (int b = 0; b < A.r1(); ++b) t(a, i, b) = A(a, i, b);
            for (int a = 0; a < B.r0(); ++a)
                for (int b = 0; b < B.r1(); ++b)
                    t(oa + a, i, ob + b) += s * B(a, i, b);  // d=1 overlaps
        }
        h.cores.push_back(std::move(t));
    }
    double nh = norm2(h), nf = norm2(f);
    if (nf == 0.0) return nh > 0 ? 1.0 : 0.0;
    return nh / nf;
}

namespace {

// thin QR helper: A (m x n) -> Q (m x k), R (k x n), k = min(m, n)
void thin_qr(const MatrixXd& A, MatrixXd& Q, MatrixXd& R) {
    const Eigen::Index k = std::min(A.rows(), A.cols());
    Eigen::HouseholderQR<MatrixXd> qr(A);
    Q = qr.householderQ() * MatrixXd::Identity(A.rows(), k);
    R = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
    // sign normalization: nonnegative diagonal of R
    for (Eigen::Index i = 0; i < k; ++i) {
        if (R(i, i) < 0) {
            R.row(i) = -R.row(i);
            Q.col(i) = -Q.col(i);
        }
    }
}

}  // namespace

Ftt round(const Ftt& f, double tol) {
    const int d = f.dim();
    Ftt g = f;
    if (d == 1) return g;
    // move to Cholesky-weighted coordinates so truncation is in weighted L2
    for (int k = 0; k < d; ++k) {
        Tensor3& A = g.cores[k];
        const MatrixXd& L = f.bases[k]->mass_cholesky();
        auto R = A.right_unfold();
        for (int b = 0; b < A.r1(); ++b)
            R.middleCols(std::ptrdiff_t(b) * A.n(), A.n()) =
                (R.middleCols(std::ptrdiff_t(b) * A.n(), A.n()) * L).eval();
    }
    // right-to-left orthogonalization
    for (int k = d - 1; k >= 1; --k) {
        Tensor3& A = g.cores[k];
        MatrixXd Q, R;
        thin_qr(MatrixXd(A.right_unfold().transpose()), Q, R);
        const int m = int(Q.cols());
        g.cores[k] = Tensor3::from_right_unfold(Q.transpose(), m, A.n(), A.r1());
        Tensor3& P = g.cores[k - 1];
        MatrixXd newL = P.left_unfold() * R.transpose();
        g.cores[k - 1] = Tensor3::from_left_unfold(newL, P.r0(), P.n(), m);
    }
    const double nrm = g.cores[0].left_unfold().norm();
    const double delta =
        (tol > 0) ? tol * nrm / std::sqrt(double(d - 1)) : 1e-14 * nrm;
    // left-to-right SVD truncation
    for (int k = 0; k < d - 1; ++k) {
        Tensor3& A = g.cores[k];
        Eigen::BDCSVD<MatrixXd> svd(A.left_unfold(),
                                    Eigen::ComputeThinU | Eigen::ComputeThinV);
        const VectorXd& s = svd.singularValues();
        int r = 0;
        for (Eigen::Index i = 0; i < s.size(); ++i)
            if (s[i] > delta) ++r;
        r = std::max(r, 1);
        MatrixXd U = svd.matrixU().leftCols(r);
        MatrixXd C = s.head(r).asDiagonal() * svd.matrixV().leftCols(r).transpose();
        g.cores[k] = Tensor3::from_left_unfold(U, A.r0(), A.n(), r);
        Tensor3& B = g.cores[k + 1];
        MatrixXd newR = C * B.right_unfold();
        g.cores[k + 1] = Tensor3::from_right_unfold(newR, r, B.n(), B.r1());
    }
    // back to plain coefficients
    for (int k = 0; k < d; ++k) {
        Tensor3& A = g.cores[k];
        const MatrixXd& L = f.bases[k]->mass_cholesky();
        auto R = A.right_unfold();
        for (int b = 0; b < A.r1(); ++b) {
            // undo c = a * L  (solve a * L = c blockwise)
            MatrixXd blk = R.middleCols(std::ptrdiff_t(b) * A.n(), A.n());
            R.middleCols(std::ptrdiff_t(b) * A.n(), A.n()) =
                L.transpose()
                    .triangularView<Eigen::Upper>()
                    .solve(blk.transpose())
                    .transpose();
        }
    }
    return g;
}

}  // namespace dtt
