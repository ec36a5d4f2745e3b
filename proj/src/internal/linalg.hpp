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

// Raw Eigen helpers shared by the geometry and estimator translation units.
// Nothing here validates grades; callers do.

#pragma once

#include <cmath>
#include <string>
#include <string_view>

#include "sercom/hermitian.hpp"

namespace sercom::internal {

struct Eig {
  CMatrix vectors;
  RVector values;  // ascending
};

/// Eigendecomposition of a Hermitian matrix that must be HPD under kHpdRelTol.
inline Eig hpd_eigen(const CMatrix& m, std::string_view what) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m);
  if (es.info() != Eigen::Success) {
    throw DefinitenessError(std::string(what) + ": eigendecomposition failed");
  }
  const RVector& v = es.eigenvalues();
  const double top = v.cwiseAbs().maxCoeff();
  if (!(top > 0.0) || v(0) <= kHpdRelTol * top) {
    throw DefinitenessError(std::string(what) + ": matrix is not HPD (smallest eigenvalue " +
                            std::to_string(v(0)) + ")");
  }
  return {es.eigenvectors(), v};
}

inline double log_det_from_llt(const Eigen::LLT<CMatrix>& llt) {
  const auto& l = llt.matrixLLT();
  double acc = 0.0;
  for (Index i = 0; i < l.rows(); ++i) acc += std::log(std::abs(l(i, i).real()));
  return 2.0 * acc;
}

inline Eigen::LLT<CMatrix> checked_llt(const CMatrix& m, std::string_view what) {
  Eigen::LLT<CMatrix> llt(m);
  if (llt.info() != Eigen::Success) {
    throw DefinitenessError(std::string(what) + ": Cholesky factorization failed");
  }
  return llt;
}

/// L^{-1} X L^{-H} for the Cholesky factor L of the factorized matrix.
inline CMatrix whiten(const Eigen::LLT<CMatrix>& llt, const CMatrix& x) {
  const auto l = llt.matrixL();
  CMatrix y = l.solve(x);
  CMatrix z = l.solve(y.adjoint());
  return symmetrize(z.adjoint());
}

/// V diag(f) V^H.
inline CMatrix compose(const CMatrix& vectors, const RVector& f) {
  return symmetrize(vectors * f.cast<cdouble>().asDiagonal() * vectors.adjoint());
}

/// Divided difference (log a - log b) / (a - b) for a, b > 0, stable at a == b.
inline double log_divided_difference(double a, double b) {
  const double x = (a - b) / b;
  if (std::abs(x) < 1e-8) return (1.0 - 0.5 * x) / b;
  return std::log1p(x) / (a - b);
}

/// Fréchet derivative of the principal logarithm at V diag(λ) V^H, applied to E.
inline CMatrix frechet_log(const Eig& eig, const CMatrix& e) {
  const Index n = eig.values.size();
  CMatrix t = eig.vectors.adjoint() * e * eig.vectors;
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < n; ++i) {
      t(i, j) *= log_divided_difference(eig.values(i), eig.values(j));
    }
  }
  return symmetrize(eig.vectors * t * eig.vectors.adjoint());
}

}  // namespace sercom::internal
