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

// Numeric counterparts of the two criteria-comparison results: the
// asymptotic-equivalence constants and the outlier-contribution ordering.

#pragma once

#include <cstddef>

#include "sercom/criteria.hpp"

namespace sercom {

struct EquivalenceBoundReport {
  double epsilon = 0.0;
  double rho = 0.0;
  double delta = 0.0;
  Index dim = 0;
  double kappa = 1.0;
  double n0 = 0.0;  ///< minimum snapshot count N₀(ε, δ, ρ)
  double c_amv = 0.0;
  double c_airm = 0.0;
  double c_jbld = 0.0;
};

double equivalence_constant_amv(double epsilon);
double equivalence_constant_airm(double epsilon);
double equivalence_constant_jbld(double epsilon);

/// N₀ = κ² e^{2ρ} (M + log(2/δ)) / (ε − (e^ρ − 1))² together with the three
/// gap constants. Requires 0<ε<1, 0<ρ<log(1+ε), 0<δ<1, κ≥1, dim≥1; DomainError otherwise.
EquivalenceBoundReport equivalence_bounds(double epsilon, double rho, double delta, Index dim,
                                          double kappa);

/// Gaps between each criterion and SPICE for one (model, sample) pair,
/// with the bounds evaluated at a chosen ε.
struct EquivalenceGapCheck {
  double measured_epsilon = 0.0;  ///< ‖R̂R^{-1} − I‖₂
  bool event_holds = false;       ///< measured_epsilon ≤ ε
  double amv_gap = 0.0;           ///< |D²_AMV − D²_SPICE|
  double airm_gap = 0.0;          ///< |D²_AIRM − D²_SPICE|
  double jbld_gap = 0.0;          ///< |8 D²_JBLD − D²_SPICE|
  double amv_bound = 0.0;         ///< M C_AMV(ε) ε³
  double airm_bound = 0.0;        ///< M C_AIRM(ε) ε⁴
  double jbld_bound = 0.0;        ///< M C_JBLD(ε) ε⁴

  bool within_bounds() const {
    return amv_gap <= amv_bound && airm_gap <= airm_bound && jbld_gap <= jbld_bound;
  }
};

/// Spectral norm ‖R̂R^{-1} − I‖₂.
double concentration_epsilon(const HermitianMatrix& model, const HermitianMatrix& sample);

EquivalenceGapCheck check_equivalence_gaps(const HermitianMatrix& model, const HermitianMatrix& sample,
                                           double epsilon);

/// s_r = ψ(λ_r) / Σ_m ψ(λ_m). Throws DegenerateError when the sum is zero,
/// UnsupportedError for LE and DomainError for r out of range.
double relative_contribution(CriterionKind kind, const EigenSpectrum& spectrum, std::size_t r);

/// True when every λ_m (m ≠ r) lies within [1−ε, 1+ε] and
/// log λ_r ≥ max(log(1+ε), −log(1−ε)).
bool outlier_hypothesis_holds(const EigenSpectrum& spectrum, std::size_t r, double epsilon);

/// (sinh u / u)², with the value 1 at u = 0.
double spice_to_airm_ratio(double u);
/// log(cosh u) / (4u²), with the value 1/8 at u = 0.
double jbld_to_airm_ratio(double u);

}  // namespace sercom
