// SPDX-License-Identifier: Apache-2.0
//
// Copyright 2026 The sercom authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "sercom/baselines.hpp"

namespace sercom {

std::vector<double> esprit_baseline(const HermitianMatrix& sample, std::size_t k, const ArrayGeometry& geom) {
  if (geom.kind() != ArrayKind::ULA) throw UnsupportedError("ESPRIT needs a uniform linear array");
  const Index m = geom.size();
  if (sample.dim() != m) throw ShapeError("ESPRIT: sample size does not match the array");
  if (k < 1 || static_cast<Index>(k) >= m) {
    throw DomainError("ESPRIT: source count must lie in [1, M-1], got " + std::to_string(k));
  }
  const auto kk = static_cast<Index>(k);

  Eigen::SelfAdjointEigenSolver<CMatrix> es(sample.matrix());
  if (es.info() != Eigen::Success) throw DegenerateError("ESPRIT: eigendecomposition failed");
  const CMatrix signal = es.eigenvectors().rightCols(kk);  // ascending order: dominant at the right
  const CMatrix e1 = signal.topRows(m - 1);
  const CMatrix e2 = signal.bottomRows(m - 1);
  const CMatrix psi = e1.completeOrthogonalDecomposition().solve(e2);

  Eigen::ComplexEigenSolver<CMatrix> ces(psi, false);
  if (ces.info() != Eigen::Success) throw DegenerateError("ESPRIT: rotation eigenvalues failed");

  const double scale = 2.0 * std::numbers::pi * geom.spacing();
  std::vector<double> doas;
  for (Index i = 0; i < kk; ++i) {
    const double c = std::clamp(std::arg(ces.eigenvalues()(i)) / scale, -1.0, 1.0);
    doas.push_back(std::acos(c) * 180.0 / std::numbers::pi);
  }
  std::sort(doas.begin(), doas.end());
  return doas;
}

std::vector<double> ls_source_powers(const HermitianMatrix& sample, const std::vector<double>& directions_deg,
                                     const ArrayGeometry& geom, double noise_power) {
  const CMatrix a = steering_matrix(geom, directions_deg);
  if (a.rows() != sample.dim()) throw ShapeError("source powers: sample size does not match the array");
  const CMatrix pinv = a.completeOrthogonalDecomposition().pseudoInverse();
  const CMatrix centered = sample.matrix() - noise_power * CMatrix::Identity(a.rows(), a.rows());
  const CMatrix s = pinv * centered * pinv.adjoint();
  std::vector<double> out;
  for (Index i = 0; i < s.rows(); ++i) out.push_back(std::max(s(i, i).real(), 0.0));
  return out;
}

}  // namespace sercom
