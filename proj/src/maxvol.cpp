#include "dtt/maxvol.hpp"

#include <cmath>
#include <stdexcept>

namespace dtt {

using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

std::vector<int> ge_pivot_rows(const MatrixXd& H) {
    const int m = int(H.rows()), r = int(H.cols());
    MatrixXd W = H;
    std::vector<int> picked;
    std::vector<bool> used(m, false);
    picked.reserve(r);
    for (int j = 0; j < r; ++j) {
        int p = -1;
        double best = -1.0;
        for (int i = 0; i < m; ++i) {
            if (used[i]) continue;
            double v = std::abs(W(i, j));
            if (v > best) {
                best = v;
                p = i;
            }
        }
        if (p < 0 || best == 0.0)
            throw std::runtime_error("maxvol: rank-deficient seed matrix");
        used[p] = true;
        picked.push_back(p);
        for (int i = 0; i < m; ++i) {
            if (i == p || W(i, j) == 0.0) continue;
            W.row(i) -= (W(i, j) / W(p, j)) * W.row(p);
        }
    }
    return picked;
}

}  // namespace

MaxvolResult maxvol(const MatrixXd& H, double delta,
                    const std::optional<std::vector<int>>& I0) {
    const int m = int(H.rows()), r = int(H.cols());
    if (m < r) throw std::invalid_argument("maxvol: need rows >= cols");
    std::vector<int> I = I0 ? *I0 : ge_pivot_rows(H);
    if (int(I.size()) != r) throw std::invalid_argument("maxvol: bad seed size");

    MatrixXd Hs(r, r);
    for (int j = 0; j < r; ++j) Hs.row(j) = H.row(I[j]);
    Eigen::PartialPivLU<MatrixXd> lu(Hs.transpose());
    if (std::abs(lu.determinant()) == 0.0)
        throw std::runtime_error("maxvol: singular seed submatrix");
    MatrixXd B = lu.solve(H.transpose()).transpose();

    const long max_swaps = std::max(long(m) * r, 100L);
    for (long it = 0;; ++it) {
        int bi = 0, bj = 0;
        double best = 0.0;
        for (int j = 0; j < r; ++j)
            for (int i = 0; i < m; ++i) {
                double v = std::abs(B(i, j));
                if (v > best) {
                    best = v;
                    bi = i;
                    bj = j;
                }
            }
        if (best <= 1.0 + delta) break;
        if (it >= max_swaps)
            throw std::runtime_error("maxvol: no convergence (ill-conditioned input)");
        // swap row I[bj] <- bi; Sherman-Morrison update keeps B = H * Hs^{-1}
        const double piv = B(bi, bj);
        VectorXd col = B.col(bj);
        Eigen::RowVectorXd row = B.row(bi);
        row[bj] -= 1.0;
        B.noalias() -= col * (row / piv);
        I[bj] = bi;
    }
    return {I, B};
}

}  // namespace dtt
