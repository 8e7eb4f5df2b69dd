#include "dtt/cross.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

#include "dtt/maxvol.hpp"

namespace dtt {

namespace {

double snap_to_grid(const Basis1D& b, double x) {
    const VectorXd& g = b.nodes();
    int best = 0;
    double dmin = std::abs(x - g[0]);
    for (int i = 1; i < g.size(); ++i) {
        double d = std::abs(x - g[i]);
        if (d < dmin) {
            dmin = d;
            best = i;
        }
    }
    return g[best];
}

double draw_grid_coord(const Basis1D& b, const Reference& ref, Rng& rng) {
    double u = ref.sample1(rng);
    // affine map from the reference interval onto this dimension's domain
    double t = (u - ref.lo()) / (ref.hi() - ref.lo());
    return snap_to_grid(b, b.a() + t * (b.b() - b.a()));
}

// rows x (last-first+1) random grid points, distinct rows when possible
MatrixXd random_grid_set(const std::vector<BasisPtr>& bases, int first, int last,
                         int rows, const Reference& ref, Rng& rng) {
    const int dims = last - first + 1;
    MatrixXd out(rows, dims);
    std::set<std::vector<double>> seen;
    for (int r = 0; r < rows; ++r) {
        for (int attempt = 0; attempt < 100; ++attempt) {
            std::vector<double> p(dims);
            for (int j = 0; j < dims; ++j)
                p[j] = draw_grid_coord(*bases[first + j], ref, rng);
            if (seen.insert(p).second || attempt == 99) {
                for (int j = 0; j < dims; ++j) out(r, j) = p[j];
                break;
            }
        }
    }
    return out;
}

// ---- mass-Cholesky weighting of unfoldings -------------------------------
// left layout: rows (alpha + i*r); weighting acts on the i index.
MatrixXd weight_left(const MatrixXd& H, int r, int n, const MatrixXd& L) {
    MatrixXd W(H.rows(), H.cols());
    for (Eigen::Index c = 0; c < H.cols(); ++c) {
        Eigen::Map<const MatrixXd> S(H.col(c).data(), r, n);
        Eigen::Map<MatrixXd>(W.col(c).data(), r, n) = S * L;
    }
    return W;
}

MatrixXd unweight_left(const MatrixXd& Q, int r, int n, const MatrixXd& L) {
    MatrixXd H(Q.rows(), Q.cols());
    for (Eigen::Index c = 0; c < Q.cols(); ++c) {
        Eigen::Map<const MatrixXd> S(Q.col(c).data(), r, n);
        Eigen::Map<MatrixXd>(H.col(c).data(), r, n) =
            L.transpose().triangularView<Eigen::Upper>().solve(S.transpose()).transpose();
    }
    return H;
}

// right-transposed layout: rows (i + beta*n); weighting acts on i.
MatrixXd weight_right(const MatrixXd& Ht, int n, const MatrixXd& L) {
    MatrixXd W(Ht.rows(), Ht.cols());
    const int blocks = int(Ht.rows()) / n;
    for (int b = 0; b < blocks; ++b)
        W.middleRows(std::ptrdiff_t(b) * n, n) =
            L.transpose() * Ht.middleRows(std::ptrdiff_t(b) * n, n);
    return W;
}

MatrixXd unweight_right(const MatrixXd& Q, int n, const MatrixXd& L) {
    MatrixXd H(Q.rows(), Q.cols());
    const int blocks = int(Q.rows()) / n;
    for (int b = 0; b < blocks; ++b)
        H.middleRows(std::ptrdiff_t(b) * n, n) =
            L.transpose().triangularView<Eigen::Upper>().solve(
                Q.middleRows(std::ptrdiff_t(b) * n, n));
    return H;
}

// Orthonormal column factor of a weighted unfolding; SVD when truncating,
// Householder QR otherwise. carry (optional) satisfies Hw ~= Q * carry.
MatrixXd ortho_factor(const MatrixXd& Hw, double trunc_tol, int max_cols,
                      MatrixXd* carry = nullptr) {
    const int m = int(std::min(Hw.rows(), Hw.cols()));
    int keep = std::min(m, max_cols);
    if (Hw.cwiseAbs().maxCoeff() == 0.0) {
        // all-zero block (target underflowed everywhere): keep one unit
        // placeholder direction so row selection stays well posed
        MatrixXd Q = MatrixXd::Zero(Hw.rows(), 1);
        Q(0, 0) = 1.0;
        if (carry) *carry = MatrixXd::Zero(1, Hw.cols());
        return Q;
    }
    if (trunc_tol > 0.0 || keep < m) {
        Eigen::BDCSVD<MatrixXd> svd(Hw, Eigen::ComputeThinU | Eigen::ComputeThinV);
        const VectorXd& s = svd.singularValues();
        int r = 0;
        for (Eigen::Index i = 0; i < std::min<Eigen::Index>(s.size(), keep); ++i)
            if (trunc_tol <= 0.0 || s[i] > trunc_tol * s[0]) ++r;
        r = std::max(r, 1);
        if (carry)
            *carry = s.head(r).asDiagonal() * svd.matrixV().leftCols(r).transpose();
        return svd.matrixU().leftCols(r);
    }
    // Householder QR: the orthonormal factor keeps full column rank even when
    // Hw itself is (benignly) rank deficient, preserving the fixed-rank
    // evaluation-count contract of a directional sweep
    Eigen::HouseholderQR<MatrixXd> qr(Hw);
    MatrixXd Q = qr.householderQ() * MatrixXd::Identity(Hw.rows(), m);
    MatrixXd R = qr.matrixQR().topRows(m).triangularView<Eigen::Upper>();
    for (int i = 0; i < m; ++i)
        if (R(i, i) < 0) {
            R.row(i) = -R.row(i);
            Q.col(i) = -Q.col(i);
        }
    if (carry) *carry = R;
    return Q;
}

struct CrossWorker {
    const BatchFn& f;
    const std::vector<BasisPtr>& bases;
    CrossOptions opts;
    const Reference& ref;
    Rng rng;
    int d;
    std::vector<MatrixXd> left_sets;   // left_sets[k]: prefix points, rank_{k} rows
    std::vector<MatrixXd> right_sets;  // right_sets[k]: suffix points for dims k+1..d-1
    std::vector<Tensor3> cores;
    long eval_count = 0;

    CrossWorker(const BatchFn& f_, const std::vector<BasisPtr>& b,
                const CrossOptions& o, const Reference& r)
        : f(f_), bases(b), opts(o), ref(r), rng(o.rng_seed, 0), d(int(b.size())) {
        left_sets.assign(d, MatrixXd());
        right_sets.assign(d, MatrixXd());
        left_sets[0] = MatrixXd(1, 0);
        right_sets[d - 1] = MatrixXd(1, 0);
        cores.assign(d, Tensor3());
    }

    // evaluate f on left x nodes_k x right; flat order alpha, then i, then beta
    VectorXd eval_block(const MatrixXd& left, int k, const MatrixXd& right) {
        const int rl = int(left.rows()), rr = int(right.rows());
        const VectorXd& nodes = bases[k]->nodes();
        const int n = int(nodes.size());
        MatrixXd X(std::ptrdiff_t(rl) * n * rr, d);
        Eigen::Index row = 0;
        for (int b = 0; b < rr; ++b)
            for (int i = 0; i < n; ++i)
                for (int a = 0; a < rl; ++a, ++row) {
                    for (int j = 0; j < k; ++j) X(row, j) = left(a, j);
                    X(row, k) = nodes[i];
                    for (int j = k + 1; j < d; ++j) X(row, j) = right(b, j - k - 1);
                }
        VectorXd v = f(X);
        eval_count += v.size();
        for (Eigen::Index i = 0; i < v.size(); ++i)
            if (!std::isfinite(v[i])) {
                std::ostringstream os;
                os << "tt_cross: non-finite evaluation at point (";
                for (int j = 0; j < d; ++j) os << (j ? ", " : "") << X(i, j);
                os << ")";
                throw std::runtime_error(os.str());
            }
        return v;
    }

    MatrixXd maybe_enrich_right(int k, int rho) {
        if (rho <= 0 || k == d - 1) return right_sets[k];
        MatrixXd extra = random_grid_set(bases, k + 1, d - 1, rho, ref, rng);
        MatrixXd out(right_sets[k].rows() + rho, right_sets[k].cols());
        out << right_sets[k], extra;
        return out;
    }

    MatrixXd maybe_enrich_left(int k, int rho) {
        if (rho <= 0 || k == 0) return left_sets[k];
        MatrixXd extra = random_grid_set(bases, 0, k - 1, rho, ref, rng);
        MatrixXd out(left_sets[k].rows() + rho, left_sets[k].cols());
        out << left_sets[k], extra;
        return out;
    }

    void forward_sweep(int rank_cap) {
        for (int k = 0; k < d; ++k) {
            const int n = bases[k]->n();
            const int rl = int(left_sets[k].rows());
            if (k == d - 1) {
                VectorXd v = eval_block(left_sets[k], k, right_sets[k]);
                cores[k] = Tensor3::from_left_unfold(
                    Eigen::Map<const MatrixXd>(v.data(), std::ptrdiff_t(rl) * n, 1),
                    rl, n, 1);
                break;
            }
            MatrixXd right = maybe_enrich_right(k, opts.Rho);
            VectorXd v = eval_block(left_sets[k], k, right);
            Eigen::Map<const MatrixXd> H(v.data(), std::ptrdiff_t(rl) * n,
                                         right.rows());
            MatrixXd Hw = weight_left(H, rl, n, bases[k]->mass_cholesky());
            MatrixXd Q = ortho_factor(Hw, opts.truncation_tol, rank_cap);
            MatrixXd Hs = unweight_left(Q, rl, n, bases[k]->mass_cholesky());
            auto mv = maxvol(Hs, opts.maxvol_tol);
            const int m = int(Q.cols());
            cores[k] = Tensor3::from_left_unfold(mv.B, rl, n, m);
            MatrixXd newLeft(m, k + 1);
            for (int j = 0; j < m; ++j) {
                int idx = mv.rows[j];
                int a = idx % rl, i = idx / rl;
                for (int c = 0; c < k; ++c) newLeft(j, c) = left_sets[k](a, c);
                newLeft(j, k) = bases[k]->nodes()[i];
            }
            left_sets[k + 1] = std::move(newLeft);
        }
    }

    void backward_sweep(int rank_cap) {
        for (int k = d - 1; k >= 0; --k) {
            const int n = bases[k]->n();
            const int rr = int(right_sets[k].rows());
            if (k == 0) {
                VectorXd v = eval_block(left_sets[0], 0, right_sets[0]);
                cores[0] = Tensor3::from_right_unfold(
                    Eigen::Map<const MatrixXd>(v.data(), 1, std::ptrdiff_t(n) * rr),
                    1, n, rr);
                break;
            }
            MatrixXd left = maybe_enrich_left(k, opts.Rho);
            const int rl = int(left.rows());
            VectorXd v = eval_block(left, k, right_sets[k]);
            // Ht rows (i + beta*n), cols alpha
            MatrixXd Ht(std::ptrdiff_t(n) * rr, rl);
            for (int b = 0; b < rr; ++b)
                for (int i = 0; i < n; ++i)
                    for (int a = 0; a < rl; ++a)
                        Ht(i + std::ptrdiff_t(b) * n, a) =
                            v[a + std::ptrdiff_t(i) * rl + std::ptrdiff_t(b) * rl * n];
            MatrixXd Hw = weight_right(Ht, n, bases[k]->mass_cholesky());
            MatrixXd Q = ortho_factor(Hw, opts.truncation_tol, rank_cap);
            MatrixXd Hs = unweight_right(Q, n, bases[k]->mass_cholesky());
            auto mv = maxvol(Hs, opts.maxvol_tol);
            const int m = int(Q.cols());
            cores[k] = Tensor3::from_right_unfold(mv.B.transpose(), m, n, rr);
            MatrixXd newRight(m, d - k);
            for (int j = 0; j < m; ++j) {
                int idx = mv.rows[j];
                int i = idx % n, b = idx / n;
                newRight(j, 0) = bases[k]->nodes()[i];
                for (int c = 1; c < d - k; ++c)
                    newRight(j, c) = right_sets[k](b, c - 1);
            }
            right_sets[k - 1] = std::move(newRight);
        }
    }

    Ftt assemble() const {
        Ftt g;
        g.bases = bases;
        g.cores = cores;
        return g;
    }
};

}  // namespace

MatrixXd enrich_points(const std::vector<BasisPtr>& bases, int first_dim,
                       int last_dim, const Reference& ref, int rho, Rng& rng) {
    if (rho <= 0) return MatrixXd(0, last_dim - first_dim + 1);
    return random_grid_set(bases, first_dim, last_dim, rho, ref, rng);
}

// Derive initial reduced suffix sets from an existing FTT by a right-to-left
// orthogonalization-and-pivoting pass over its cores (no function calls).
static std::vector<MatrixXd> warm_right_sets(const Ftt& warm, int target_rank,
                                             const Reference& ref, double delta,
                                             Rng& rng) {
    const int d = warm.dim();
    const auto& bases = warm.bases;
    std::vector<MatrixXd> rs(d);
    rs[d - 1] = MatrixXd(1, 0);
    std::vector<Tensor3> cores = warm.cores;
    for (int k = d - 1; k >= 1; --k) {
        Tensor3& A = cores[k];
        const int n = A.n(), rr = A.r1(), rl = A.r0();
        MatrixXd Ht = A.right_unfold().transpose();
        MatrixXd Hw = weight_right(Ht, n, bases[k]->mass_cholesky());
        MatrixXd carry;
        MatrixXd Q = ortho_factor(Hw, 0.0, std::min(target_rank, rl), &carry);
        MatrixXd Hs = unweight_right(Q, n, bases[k]->mass_cholesky());
        auto mv = maxvol(Hs, delta);
        const int m = int(Q.cols());
        // fold carry^T into the previous core to keep the chain consistent
        Tensor3& P = cores[k - 1];
        MatrixXd newP = P.left_unfold() * carry.transpose();
        cores[k - 1] = Tensor3::from_left_unfold(newP, P.r0(), P.n(), m);
        MatrixXd set(m, d - k);
        for (int j = 0; j < m; ++j) {
            int idx = mv.rows[j];
            int i = idx % n, b = idx / n;
            set(j, 0) = bases[k]->nodes()[i];
            for (int c = 1; c < d - k; ++c) set(j, c) = rs[k](b, c - 1);
        }
        // pad with random grid points if the warm rank is below the target
        if (m < target_rank) {
            MatrixXd extra =
                random_grid_set(bases, k, d - 1, target_rank - m, ref, rng);
            MatrixXd padded(target_rank, d - k);
            padded << set, extra;
            set = std::move(padded);
        }
        rs[k - 1] = std::move(set);
    }
    return rs;
}

// Mirror of warm_right_sets: initial reduced prefix sets from an existing FTT
// by a left-to-right orthogonalization-and-pivoting pass (no function calls).
static std::vector<MatrixXd> warm_left_sets(const Ftt& warm, int target_rank,
                                            const Reference& ref, double delta,
                                            Rng& rng) {
    const int d = warm.dim();
    const auto& bases = warm.bases;
    std::vector<MatrixXd> ls(d);
    ls[0] = MatrixXd(1, 0);
    std::vector<Tensor3> cores = warm.cores;
    for (int k = 0; k + 1 < d; ++k) {
        Tensor3& A = cores[k];
        const int n = A.n(), rl = A.r0(), rr = A.r1();
        MatrixXd H = A.left_unfold();
        MatrixXd Hw = weight_left(H, rl, n, bases[k]->mass_cholesky());
        MatrixXd carry;
        MatrixXd Q = ortho_factor(Hw, 0.0, std::min(target_rank, rr), &carry);
        MatrixXd Hs = unweight_left(Q, rl, n, bases[k]->mass_cholesky());
        auto mv = maxvol(Hs, delta);
        const int m = int(Q.cols());
        // fold carry into the next core to keep the chain consistent
        Tensor3& P = cores[k + 1];
        MatrixXd newP = carry * P.right_unfold();
        cores[k + 1] = Tensor3::from_right_unfold(newP, m, P.n(), P.r1());
        MatrixXd set(m, k + 1);
        for (int j = 0; j < m; ++j) {
            int idx = mv.rows[j];
            int a = idx % rl, i = idx / rl;
            for (int c = 0; c < k; ++c) set(j, c) = ls[k](a, c);
            set(j, k) = bases[k]->nodes()[i];
        }
        if (m < target_rank) {
            MatrixXd extra =
                random_grid_set(bases, 0, k, target_rank - m, ref, rng);
            MatrixXd padded(target_rank, k + 1);
            padded << set, extra;
            set = std::move(padded);
        }
        ls[k + 1] = std::move(set);
    }
    return ls;
}

CrossResult tt_cross(const BatchFn& f, const std::vector<BasisPtr>& bases,
                     const CrossOptions& opts, const Reference& ref,
                     const Ftt* warm_start) {
    if (bases.empty()) throw std::invalid_argument("tt_cross: no bases");
    if (opts.R0 < 1 || opts.MaxIt < 1 || !(opts.maxvol_tol > 0))
        throw std::invalid_argument("tt_cross: invalid options");
    const int d = int(bases.size());
    CrossWorker w(f, bases, opts, ref);

    if (d == 1) {
        // single dimension: the grid itself is the full tensor
        VectorXd v = w.eval_block(MatrixXd(1, 0), 0, MatrixXd(1, 0));
        Ftt g;
        g.bases = bases;
        g.cores.push_back(Tensor3::from_left_unfold(
            Eigen::Map<const MatrixXd>(v.data(), bases[0]->n(), 1), 1,
            bases[0]->n(), 1));
        return {g, w.eval_count, 1, 0.0};
    }

    // feasible initial interface ranks (saturating grid-size caps)
    auto cap_at = [&](int k) {  // interface between dims k-1 and k, k=1..d-1
        long lo = 1, hi = 1;
        for (int j = 0; j < k; ++j) lo = std::min<long>(lo * bases[j]->n(), 1 << 28);
        for (int j = k; j < d; ++j) hi = std::min<long>(hi * bases[j]->n(), 1 << 28);
        return int(std::min<long>({lo, hi, 1 << 28}));
    };

    if (opts.start_backward) {
        if (!opts.init_left_sets.empty()) {
            w.left_sets = opts.init_left_sets;
        } else if (warm_start) {
            w.left_sets = warm_left_sets(*warm_start, opts.R0, ref,
                                         opts.maxvol_tol, w.rng);
        } else {
            for (int k = 1; k <= d - 1; ++k) {
                int r = std::min(opts.R0, cap_at(k));
                w.left_sets[k] = random_grid_set(bases, 0, k - 1, r, ref, w.rng);
            }
        }
    } else if (!opts.init_right_sets.empty()) {
        w.right_sets = opts.init_right_sets;
    } else if (warm_start) {
        w.right_sets = warm_right_sets(*warm_start, opts.R0, ref,
                                       opts.maxvol_tol, w.rng);
    } else {
        for (int k = d - 2; k >= 0; --k) {
            int r = std::min(opts.R0, cap_at(k + 1));
            w.right_sets[k] = random_grid_set(bases, k + 1, d - 1, r, ref, w.rng);
        }
    }

    Ftt prev;
    double change = 0.0;
    int sweeps = 0;
    for (int it = 0; it < opts.MaxIt; ++it) {
        int rank_cap = opts.R0 + opts.Rho * (it + 1);
        bool backward = opts.start_backward ? (it % 2 == 0) : (it % 2 == 1);
        if (backward)
            w.backward_sweep(rank_cap);
        else
            w.forward_sweep(rank_cap);
        ++sweeps;
        Ftt cur = w.assemble();
        if (it > 0) {
            change = rel_distance(cur, prev);
            if (change <= opts.stop_tol) {
                return {cur,         w.eval_count, sweeps,
                        change,      w.left_sets,  w.right_sets};
            }
        }
        prev = std::move(cur);
    }
    return {prev,   w.eval_count, sweeps,
            change, w.left_sets,  w.right_sets};
}

}  // namespace dtt
