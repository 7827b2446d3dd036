#ifndef HZREACH_MATRIX_HPP_
#define HZREACH_MATRIX_HPP_

#include <Eigen/Dense>
#include <initializer_list>
#include <vector>

namespace hzreach {

using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vec = Eigen::VectorXd;
using Index = Eigen::Index;

/// Horizontal concatenation; all blocks must share the row count.
Mat hcat(std::initializer_list<Mat> blocks);

/// Vertical concatenation; all blocks must share the column count.
Mat vcat(std::initializer_list<Mat> blocks);

/// Block-diagonal stack of matrices (zero off-diagonal fill).
Mat blkdiag(std::initializer_list<Mat> blocks);

/// Stacks vectors end to end.
Vec vstack(std::initializer_list<Vec> blocks);

inline Mat zeros(Index r, Index c) { return Mat::Zero(r, c); }

/// Row-selection matrix R such that (R x)_k = x_{dims[k]}.
Mat selector_rows(const std::vector<Index>& dims, Index n);

}  // namespace hzreach

#endif  // HZREACH_MATRIX_HPP_
