// Copyright 2026 The levelcurve Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

namespace levelcurve {

/// Block-tridiagonal system with K square blocks of size n. The off-diagonal
/// blocks are sparse (a few entries per row), the diagonal blocks dense.
struct BlockTridiagonal {
  using Sparse = Eigen::SparseMatrix<double, Eigen::RowMajor>;

  BlockTridiagonal(std::size_t block_size, std::size_t blocks);

  std::size_t n;
  std::size_t k;
  /// lower[r] couples block r to r - 1 (lower[0] unused).
  std::vector<Sparse> lower;
  std::vector<Eigen::MatrixXd> diag;
  /// upper[r] couples block r to r + 1 (upper[k - 1] unused).
  std::vector<Sparse> upper;
};

/// Block Thomas elimination with partial-pivot LU on the diagonal blocks.
/// Consumes the diagonal blocks.
Eigen::VectorXd solve_block_tridiagonal(BlockTridiagonal& system, const Eigen::VectorXd& rhs);

}  // namespace levelcurve
