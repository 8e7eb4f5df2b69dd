#pragma once

#include <Eigen/Dense>
#include <cassert>
#include <vector>

namespace dtt {

using Eigen::MatrixXd;
using Eigen::VectorXd;

/// Order-3 tensor with shape (r0, n, r1), stored so that both tensor-train
/// unfoldings are zero-copy views:
///   flat index = a + i*r0 + b*r0*n
///   left unfolding  (r0*n) x r1 : row a + i*r0
///   right unfolding r0 x (n*r1) : col i + b*n
class Tensor3 {
public:
    Tensor3() : r0_(0), n_(0), r1_(0) {}
    Tensor3(int r0, int n, int r1)
        : r0_(r0), n_(n), r1_(r1), data_(std::size_t(r0) * n * r1, 0.0) {}

    int r0() const { return r0_; }
    int n() const { return n_; }
    int r1() const { return r1_; }

    double& operator()(int a, int i, int b) {
        return data_[std::size_t(a) + std::size_t(i) * r0_ + std::size_t(b) * r0_ * n_];
    }
    double operator()(int a, int i, int b) const {
        return data_[std::size_t(a) + std::size_t(i) * r0_ + std::size_t(b) * r0_ * n_];
    }

    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }
    std::size_t size() const { return data_.size(); }

    Eigen::Map<MatrixXd> left_unfold() {
        return Eigen::Map<MatrixXd>(data_.data(), std::ptrdiff_t(r0_) * n_, r1_);
    }
    Eigen::Map<const MatrixXd> left_unfold() const {
        return Eigen::Map<const MatrixXd>(data_.data(), std::ptrdiff_t(r0_) * n_, r1_);
    }
    Eigen::Map<MatrixXd> right_unfold() {
        return Eigen::Map<MatrixXd>(data_.data(), r0_, std::ptrdiff_t(n_) * r1_);
    }
    Eigen::Map<const MatrixXd> right_unfold() const {
        return Eigen::Map<const MatrixXd>(data_.data(), r0_, std::ptrdiff_t(n_) * r1_);
    }

    static Tensor3 from_left_unfold(const MatrixXd& M, int r0, int n, int r1) {
        assert(M.rows() == std::ptrdiff_t(r0) * n && M.cols() == r1);
        Tensor3 t(r0, n, r1);
        Eigen::Map<MatrixXd>(t.data(), std::ptrdiff_t(r0) * n, r1) = M;
        return t;
    }
    static Tensor3 from_right_unfold(const MatrixXd& M, int r0, int n, int r1) {
        assert(M.rows() == r0 && M.cols() == std::ptrdiff_t(n) * r1);
        Tensor3 t(r0, n, r1);
        Eigen::Map<MatrixXd>(t.data(), r0, std::ptrdiff_t(n) * r1) = M;
        return t;
    }

    /// Fiber matrix at grid index i: (r0 x r1) slice A[:, i, :].
    MatrixXd slice(int i) const {
        MatrixXd S(r0_, r1_);
        for (int b = 0; b < r1_; ++b)
            for (int a = 0; a < r0_; ++a) S(a, b) = (*this)(a, i, b);
        return S;
    }

private:
    int r0_, n_, r1_;
    std::vector<double> data_;
};

}  // namespace dtt
