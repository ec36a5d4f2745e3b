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

#pragma once

#include <complex>
#include <string_view>

#include <Eigen/Dense>

#include "sercom/errors.hpp"

namespace sercom {

using cdouble = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Smallest eigenvalue must exceed this fraction of the spectral norm for HPD.
inline constexpr double kHpdRelTol = 1e-12;
/// Smallest eigenvalue may dip to minus this fraction of the norm and still be PSD.
inline constexpr double kPsdRelTol = 1e-10;
/// Allowed relative asymmetry max|m - m^H| / max|m| on construction.
inline constexpr double kHermitianRelTol = 1e-12;

enum class Definiteness { HPD, PSD, Indefinite };

std::string_view to_string(Definiteness d);

/// Complex Hermitian matrix tagged with its definiteness grade.
///
/// Every instance is exactly Hermitian: the stored matrix is re-symmetrized
/// as (X + X^H)/2 on construction. Grades follow the scale-invariant
/// thresholds kHpdRelTol / kPsdRelTol, and an HPD grade additionally implies
/// that a Cholesky factorization succeeded.
class HermitianMatrix {
 public:
  /// Validates squareness and Hermitian symmetry, then classifies.
  /// Throws ShapeError (non-square, empty) or DomainError (not Hermitian).
  static HermitianMatrix from_matrix(const CMatrix& m);
  static HermitianMatrix identity(Index n);
  static HermitianMatrix zero(Index n);
  /// Real diagonal matrix.
  static HermitianMatrix diagonal(const RVector& values);
  /// V diag(values) V^H for a unitary V; the grade is read off `values`.
  static HermitianMatrix from_eigen(const CMatrix& vectors, const RVector& values);

  Index dim() const { return m_.rows(); }
  const CMatrix& matrix() const { return m_; }
  Definiteness definiteness() const { return grade_; }
  bool is_hpd() const { return grade_ == Definiteness::HPD; }
  bool is_psd_or_better() const { return grade_ != Definiteness::Indefinite; }

  /// Throws DefinitenessError naming `what` unless the grade is HPD.
  void require_hpd(std::string_view what) const;

 private:
  HermitianMatrix(CMatrix m, Definiteness grade) : m_(std::move(m)), grade_(grade) {}

  CMatrix m_;
  Definiteness grade_;
};

/// Grade of an exactly Hermitian matrix using the library thresholds.
Definiteness classify(const CMatrix& hermitian);

/// Returns (m + m^H) / 2.
CMatrix symmetrize(const CMatrix& m);

/// log|m| as twice the sum of log Cholesky pivots. Throws DefinitenessError
/// when the factorization fails.
double log_det_hpd(const CMatrix& m);

/// Principal matrix logarithm V diag(log λ) V^H.
HermitianMatrix matrix_log(const HermitianMatrix& m);

struct SqrtPair {
  HermitianMatrix sqrt;
  HermitianMatrix inv_sqrt;
};

/// Principal square root and its inverse from one eigendecomposition.
SqrtPair matrix_sqrt_and_invsqrt(const HermitianMatrix& m);

/// AIRM logarithmic map of `target` into the tangent space at `base`:
/// R^{1/2} log(R^{-1/2} Γ R^{-1/2}) R^{1/2}.
HermitianMatrix riemannian_logmap(const HermitianMatrix& base, const HermitianMatrix& target);

/// AIRM inner product tr(R^{-1} X R^{-1} Y) at `base`.
double airm_inner(const HermitianMatrix& base, const HermitianMatrix& x, const HermitianMatrix& y);

}  // namespace sercom
