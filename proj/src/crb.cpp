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

#include <cmath>
#include <numbers>
#include <string>

#include "sercom/baselines.hpp"

namespace sercom {

namespace {

constexpr double kSingularRcond = 1e-12;
constexpr double kDegToRad = std::numbers::pi / 180.0;

}  // namespace

CMatrix steering_derivative(const ArrayGeometry& geom, const std::vector<double>& directions_deg) {
  const CMatrix a = steering_matrix(geom, directions_deg);
  CMatrix d(a.rows(), a.cols());
  for (Index k = 0; k < a.cols(); ++k) {
    const double th = directions_deg[static_cast<std::size_t>(k)] * kDegToRad;
    for (Index m = 0; m < a.rows(); ++m) {
      const auto& pos = geom.positions()[static_cast<std::size_t>(m)];
      const double dphase = 2.0 * std::numbers::pi * (-pos.x() * std::sin(th) + pos.y() * std::cos(th));
      d(m, k) = cdouble(0.0, dphase * kDegToRad) * a(m, k);
    }
  }
  return d;
}

std::vector<double> crb_doa(const SourceScene& scene, const ArrayGeometry& geom, Index n) {
  scene.validate();
  const std::size_t k = scene.num_sources();
  if (k == 0) throw DomainError("CRB needs at least one source");
  if (n < 1) throw DomainError("CRB needs at least one snapshot");
  const Index m = geom.size();

  const CMatrix a = steering_matrix(geom, scene.directions_deg);
  const CMatrix d = steering_derivative(geom, scene.directions_deg);
  const CMatrix p = source_covariance(scene).cast<cdouble>();
  const CMatrix r = population_covariance(scene, geom).matrix();

  const CMatrix gram = a.adjoint() * a;
  Eigen::FullPivLU<CMatrix> gram_lu(gram);
  if (gram_lu.rank() < gram.rows()) throw DegenerateError("CRB: steering vectors are linearly dependent");
  const CMatrix proj_perp = CMatrix::Identity(m, m) - a * gram_lu.solve(a.adjoint());

  const Eigen::LLT<CMatrix> r_llt(r);
  const CMatrix right = p * a.adjoint() * r_llt.solve(a) * p;
  const Eigen::MatrixXd h = (d.adjoint() * proj_perp * d).cwiseProduct(right.transpose()).real();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (h + h.transpose()));
  const double top = es.eigenvalues().cwiseAbs().maxCoeff();
  if (!(top > 0.0) || es.eigenvalues()(0) <= kSingularRcond * top) {
    throw DegenerateError("CRB: Fisher information is singular for this scene");
  }
  const Eigen::MatrixXd inv = es.eigenvectors() * es.eigenvalues().cwiseInverse().asDiagonal() *
                              es.eigenvectors().transpose();
  const double scale = scene.noise_power / (2.0 * static_cast<double>(n));
  std::vector<double> out;
  for (Index i = 0; i < inv.rows(); ++i) out.push_back(std::sqrt(scale * inv(i, i)));
  return out;
}

}  // namespace sercom
