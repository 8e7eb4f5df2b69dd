#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

namespace dtt {

struct MaxvolResult {
    std::vector<int> rows;  // I, size r
    Eigen::MatrixXd B;      // H * H[I,:]^{-1}, with B[I,:] = identity
};

/// Quasi-maximum-volume row selection. Seeds from Gaussian-elimination
/// pivots (or I0 when given) and swaps rows with rank-1 updates until
/// max |B| <= 1 + delta.
MaxvolResult maxvol(const Eigen::MatrixXd& H, double delta,
                    const std::optional<std::vector<int>>& I0 = std::nullopt);

}  // namespace dtt
