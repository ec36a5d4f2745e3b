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

// Gridless references: least-squares ESPRIT and the stochastic Cramér–Rao bound.

#pragma once

#include <vector>

#include "sercom/array.hpp"

namespace sercom {

/// LS-ESPRIT on a ULA: the K dominant eigenvectors E_s of R̂ give
/// Ψ = E₁⁺E₂ (E₁, E₂ the first and last M−1 rows); each eigenvalue z of Ψ
/// maps to θ = arccos(arg z / (2π d)). DOAs in degrees, ascending.
/// UnsupportedError for non-ULA geometry; DomainError unless 1 ≤ K < M.
std::vector<double> esprit_baseline(const HermitianMatrix& sample, std::size_t k, const ArrayGeometry& geom);

/// Least-squares source powers for given directions:
/// diag(A⁺ (R̂ − σ_n² I) A⁺ᴴ), clipped at 0.
std::vector<double> ls_source_powers(const HermitianMatrix& sample, const std::vector<double>& directions_deg,
                                     const ArrayGeometry& geom, double noise_power);

/// Per-source standard-deviation bound (degrees) from the stochastic CRB
///   CRB(θ) = σ_n²/(2N) · {Re[(Dᴴ Π⊥_A D) ⊙ (P Aᴴ R⁻¹ A P)ᵀ]}⁻¹,
/// D = ∂a/∂θ, Π⊥_A the projector off the steering columns, P the source covariance.
/// DomainError for K = 0 or N < 1; DegenerateError when the bracketed matrix
/// is numerically singular.
std::vector<double> crb_doa(const SourceScene& scene, const ArrayGeometry& geom, Index n);

/// dA/dθ (per degree) for the given directions.
CMatrix steering_derivative(const ArrayGeometry& geom, const std::vector<double>& directions_deg);

}  // namespace sercom
