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

#include <array>
#include <string_view>
#include <vector>

#include "sercom/hermitian.hpp"

namespace sercom {

/// Covariance matching criteria. Every value below is a *squared* distance.
enum class CriterionKind { AMV, SPICE, AIRM, LE, JBLD };

inline constexpr std::array<CriterionKind, 5> kAllCriteria = {
    CriterionKind::AMV, CriterionKind::SPICE, CriterionKind::AIRM, CriterionKind::LE,
    CriterionKind::JBLD};

std::string_view to_string(CriterionKind kind);
/// Case-insensitive; throws DomainError for unknown names.
CriterionKind parse_criterion(std::string_view name);

/// Ascending, strictly positive eigenvalues of Q = R^{-1/2} R̂ R^{-1/2}.
class EigenSpectrum {
 public:
  /// Sorts the values; throws DomainError on an empty or non-positive entry.
  explicit EigenSpectrum(std::vector<double> values);

  const std::vector<double>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }

 private:
  std::vector<double> values_;
};

// Distances on the HPD manifold (squared).

/// ‖log(R₁^{-1/2} R₂ R₁^{-1/2})‖_F², via the Cholesky-whitened eigenproblem.
double dist_airm(const HermitianMatrix& r1, const HermitianMatrix& r2);
/// ‖log R₁ − log R₂‖_F².
double dist_le(const HermitianMatrix& r1, const HermitianMatrix& r2);
/// log|(R₁+R₂)/2| − ½ log|R₁R₂|, all log-dets by Cholesky. Both arguments HPD.
double dist_jbld(const HermitianMatrix& r1, const HermitianMatrix& r2);

/// JBLD objective without the sample term: log|(R̂+R)/2| − ½ log|R|.
/// Accepts a PSD (rank-deficient) sample as long as the midpoint is HPD.
double jbld_objective(const HermitianMatrix& model, const HermitianMatrix& sample);

// Euclidean-weighted criteria.

/// ‖R^{-1/2}(R̂ − R)R^{-1/2}‖_F²; `sample` only needs to be Hermitian.
double crit_amv(const HermitianMatrix& model, const HermitianMatrix& sample);
/// ‖R^{-1/2}(R̂ − R)R̂^{-1/2}‖_F² evaluated in Frobenius form.
double crit_spice(const HermitianMatrix& model, const HermitianMatrix& sample);
/// Same criterion through tr(R̂^{-1}R) + tr(R^{-1}R̂) − 2M.
double crit_spice_trace_form(const HermitianMatrix& model, const HermitianMatrix& sample);

/// D²_kind(model, sample) for any of the five kinds.
double criterion_value(CriterionKind kind, const HermitianMatrix& model, const HermitianMatrix& sample);

/// Spectrum of Q from the generalized problem R̂ v = λ R v (Cholesky of R).
EigenSpectrum q_spectrum(const HermitianMatrix& model, const HermitianMatrix& sample);

/// Per-eigenvalue penalty ψ_kind(λ). LE has no such decomposition.
double psi(CriterionKind kind, double lambda);

/// Σ_m ψ_kind(λ_m).
double criterion_from_spectrum(CriterionKind kind, const EigenSpectrum& spectrum);

}  // namespace sercom
