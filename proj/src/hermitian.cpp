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

#include "sercom/hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "internal/linalg.hpp"

namespace sercom {

std::string_view to_string(Definiteness d) {
  switch (d) {
    case Definiteness::HPD:
      return "HPD";
    case Definiteness::PSD:
      return "PSD";
    case Definiteness::Indefinite:
      return "indefinite";
  }
  return "?";
}

CMatrix symmetrize(const CMatrix& m) { return 0.5 * (m + m.adjoint()); }

namespace {

Definiteness grade_from_values(const RVector& values) {
  if (values.size() == 0) return Definiteness::PSD;
  const double lo = values.minCoeff();
  const double norm = values.cwiseAbs().maxCoeff();
  if (norm > 0.0 && lo > kHpdRelTol * norm) return Definiteness::HPD;
  if (lo >= -kPsdRelTol * norm) return Definiteness::PSD;
  return Definiteness::Indefinite;
}

}  // namespace

Definiteness classify(const CMatrix& hermitian) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian, Eigen::EigenvaluesOnly);
  Definiteness g = grade_from_values(es.eigenvalues());
  if (g == Definiteness::HPD) {
    Eigen::LLT<CMatrix> llt(hermitian);
    if (llt.info() != Eigen::Success) g = Definiteness::PSD;
  }
  return g;
}

HermitianMatrix HermitianMatrix::from_matrix(const CMatrix& m) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw ShapeError("HermitianMatrix: expected a non-empty square matrix, got " +
                     std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
  if (!m.allFinite()) throw DomainError("HermitianMatrix: non-finite entry");
  const double scale = m.cwiseAbs().maxCoeff();
  const double asym = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (asym > kHermitianRelTol * scale) {
    throw DomainError("HermitianMatrix: input is not Hermitian (max asymmetry " +
                      std::to_string(asym) + ")");
  }
  CMatrix h = symmetrize(m);
  const Definiteness g = classify(h);
  return HermitianMatrix(std::move(h), g);
}

HermitianMatrix HermitianMatrix::identity(Index n) {
  if (n <= 0) throw ShapeError("HermitianMatrix::identity: dimension must be positive");
  return HermitianMatrix(CMatrix::Identity(n, n), Definiteness::HPD);
}

HermitianMatrix HermitianMatrix::zero(Index n) {
  if (n <= 0) throw ShapeError("HermitianMatrix::zero: dimension must be positive");
  return HermitianMatrix(CMatrix::Zero(n, n), Definiteness::PSD);
}

HermitianMatrix HermitianMatrix::diagonal(const RVector& values) {
  if (values.size() == 0) throw ShapeError("HermitianMatrix::diagonal: empty");
  if (!values.allFinite()) throw DomainError("HermitianMatrix::diagonal: non-finite entry");
  CMatrix m = values.cast<cdouble>().asDiagonal();
  return HermitianMatrix(std::move(m), grade_from_values(values));
}

HermitianMatrix HermitianMatrix::from_eigen(const CMatrix& vectors, const RVector& values) {
  CMatrix m = symmetrize(vectors * values.cast<cdouble>().asDiagonal() * vectors.adjoint());
  Definiteness g = grade_from_values(values);
  if (g == Definiteness::HPD && Eigen::LLT<CMatrix>(m).info() != Eigen::Success) {
    g = Definiteness::PSD;
  }
  return HermitianMatrix(std::move(m), g);
}

void HermitianMatrix::require_hpd(std::string_view what) const {
  if (!is_hpd()) {
    throw DefinitenessError(std::string(what) + ": matrix is " + std::string(to_string(grade_)) +
                            ", HPD required");
  }
}

double log_det_hpd(const CMatrix& m) {
  Eigen::LLT<CMatrix> llt(m);
  if (llt.info() != Eigen::Success) throw DefinitenessError("log-det: Cholesky factorization failed");
  return internal::log_det_from_llt(llt);
}

HermitianMatrix matrix_log(const HermitianMatrix& m) {
  m.require_hpd("matrix_log");
  const auto eig = internal::hpd_eigen(m.matrix(), "matrix_log");
  return HermitianMatrix::from_eigen(eig.vectors, eig.values.array().log().matrix());
}

SqrtPair matrix_sqrt_and_invsqrt(const HermitianMatrix& m) {
  m.require_hpd("matrix_sqrt_and_invsqrt");
  const auto eig = internal::hpd_eigen(m.matrix(), "matrix_sqrt_and_invsqrt");
  const RVector root = eig.values.array().sqrt();
  return {HermitianMatrix::from_eigen(eig.vectors, root),
          HermitianMatrix::from_eigen(eig.vectors, root.cwiseInverse())};
}

HermitianMatrix riemannian_logmap(const HermitianMatrix& base, const HermitianMatrix& target) {
  if (base.dim() != target.dim()) throw ShapeError("riemannian_logmap: dimension mismatch");
  base.require_hpd("riemannian_logmap(base)");
  target.require_hpd("riemannian_logmap(target)");
  const auto roots = matrix_sqrt_and_invsqrt(base);
  const CMatrix& s = roots.sqrt.matrix();
  const CMatrix& t = roots.inv_sqrt.matrix();
  const CMatrix whitened = symmetrize(t * target.matrix() * t);
  const auto eig = internal::hpd_eigen(whitened, "riemannian_logmap");
  const CMatrix log_q = eig.vectors * eig.values.array().log().matrix().cast<cdouble>().asDiagonal() *
                        eig.vectors.adjoint();
  return HermitianMatrix::from_matrix(symmetrize(s * log_q * s));
}

double airm_inner(const HermitianMatrix& base, const HermitianMatrix& x, const HermitianMatrix& y) {
  if (base.dim() != x.dim() || base.dim() != y.dim()) throw ShapeError("airm_inner: dimension mismatch");
  base.require_hpd("airm_inner(base)");
  Eigen::LLT<CMatrix> llt(base.matrix());
  const CMatrix rx = llt.solve(x.matrix());
  const CMatrix ry = llt.solve(y.matrix());
  // tr(R^{-1}X R^{-1}Y) = sum_ij (R^{-1}X)_ij (R^{-1}Y)_ji
  return (rx.transpose().cwiseProduct(ry)).sum().real();
}

}  // namespace sercom
