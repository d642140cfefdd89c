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

#include "levelcurve/block_tridiagonal.hpp"

#include <Eigen/LU>

#include "levelcurve/errors.hpp"

namespace levelcurve {

BlockTridiagonal::BlockTridiagonal(std::size_t block_size, std::size_t blocks)
    : n(block_size), k(blocks), lower(blocks), diag(blocks), upper(blocks) {
  const auto s = static_cast<Eigen::Index>(block_size);
  for (std::size_t r = 0; r < blocks; ++r) {
    lower[r].resize(s, s);
    upper[r].resize(s, s);
    diag[r] = Eigen::MatrixXd::Zero(s, s);
  }
}

Eigen::VectorXd solve_block_tridiagonal(BlockTridiagonal& sys, const Eigen::VectorXd& rhs) {
  const auto n = static_cast<Eigen::Index>(sys.n);
  const std::size_t k = sys.k;
  if (rhs.size() != n * static_cast<Eigen::Index>(k)) {
    throw Error(ErrorCode::InvalidArgument, "block system and right-hand side sizes differ");
  }
  // x_r = y_r - X_r x_{r+1}, with X_r = D'_r^{-1} U_r and y_r = D'_r^{-1} r'_r.
  std::vector<Eigen::MatrixXd> x_blocks(k);
  std::vector<Eigen::VectorXd> y(k);
  Eigen::PartialPivLU<Eigen::MatrixXd> lu;
  for (std::size_t r = 0; r < k; ++r) {
    Eigen::VectorXd rr = rhs.segment(static_cast<Eigen::Index>(r) * n, n);
    if (r > 0) {
      sys.diag[r].noalias() -= sys.lower[r] * x_blocks[r - 1];
      rr.noalias() -= sys.lower[r] * y[r - 1];
    }
    lu.compute(sys.diag[r]);
    y[r] = lu.solve(rr);
    if (r + 1 < k) x_blocks[r] = lu.solve(Eigen::MatrixXd(sys.upper[r]));
    if (!y[r].allFinite()) {
      throw Error(ErrorCode::NewtonDiverged, "singular Jacobian block in Newton step");
    }
  }
  Eigen::VectorXd x(rhs.size());
  x.segment(static_cast<Eigen::Index>(k - 1) * n, n) = y[k - 1];
  for (std::size_t r = k - 1; r-- > 0;) {
    x.segment(static_cast<Eigen::Index>(r) * n, n) =
        y[r] - x_blocks[r] * x.segment(static_cast<Eigen::Index>(r + 1) * n, n);
  }
  return x;
}

}  // namespace levelcurve
