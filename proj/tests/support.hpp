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

// Random matrices for tests.

#pragma once

#include <cmath>
#include <random>

#include "sercom/hermitian.hpp"
#include "sercom/rng.hpp"

namespace sercom::testing {

inline CMatrix random_complex(Rng& rng, Index rows, Index cols) {
  std::normal_distribution<double> g(0.0, 1.0);
  CMatrix x(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) {
      const double re = g(rng);
      const double im = g(rng);
      x(i, j) = cdouble(re, im);
    }
  }
  return x;
}

inline HermitianMatrix random_hermitian(Rng& rng, Index m) {
  const CMatrix x = random_complex(rng, m, m);
  return HermitianMatrix::from_matrix(x + x.adjoint());
}

/// Haar-ish unitary from the QR of a Gaussian matrix.
inline CMatrix random_unitary(Rng& rng, Index m) {
  Eigen::HouseholderQR<CMatrix> qr(random_complex(rng, m, m));
  return qr.householderQ() * CMatrix::Identity(m, m);
}

/// U diag(λ) U^H with log λ uniform in [−log κ/2, log κ/2] (condition number ≤ κ).
inline HermitianMatrix random_hpd(Rng& rng, Index m, double kappa = 10.0) {
  std::uniform_real_distribution<double> u(-0.5 * std::log(kappa), 0.5 * std::log(kappa));
  RVector lambda(m);
  for (Index i = 0; i < m; ++i) lambda(i) = std::exp(u(rng));
  return HermitianMatrix::from_eigen(random_unitary(rng, m), lambda);
}

/// Well-conditioned random invertible matrix (identity plus a scaled Gaussian).
inline CMatrix random_invertible(Rng& rng, Index m) {
  return CMatrix::Identity(m, m) * 2.0 + random_complex(rng, m, m) * (0.5 / std::sqrt(static_cast<double>(m)));
}

inline double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

}  // namespace sercom::testing
