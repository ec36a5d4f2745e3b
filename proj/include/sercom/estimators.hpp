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

// On-grid spatial power estimation by covariance matching.
//
// All estimators minimize a criterion D²(R(p), R̂) over p ≥ 0, where
// R(p) = A diag(p) A^H + σ_n² I, with projected Adam:
//
//   m ← β₁m + (1−β₁)g,  v ← β₂v + (1−β₂)g²
//   p ← max(p − η (m/(1−β₁ⁱ)) ⊘ (√(v/(1−β₂ⁱ)) + ε_v), 0)
//
// stopping when ‖p⁽ⁱ⁾ − p⁽ⁱ⁻¹⁾‖ / ‖p⁽ⁱ⁻¹⁾‖ < ε_p or after maxiter steps.
// SERCOM uses JBLD (default), AIRM or LE; the SPICE and SAMV baselines run
// the same loop on their Euclidean-weighted criteria.

#pragma once

#include <vector>

#include "sercom/array.hpp"
#include "sercom/criteria.hpp"

namespace sercom {

/// Steering matrix together with the grid it was sampled on.
class SteeringGrid {
 public:
  SteeringGrid(AngularGrid grid, CMatrix steering);
  static SteeringGrid build(const ArrayGeometry& geom, const AngularGrid& grid);

  const AngularGrid& grid() const { return grid_; }
  const CMatrix& matrix() const { return steering_; }
  Index num_sensors() const { return steering_.rows(); }
  Index size() const { return steering_.cols(); }

 private:
  AngularGrid grid_;
  CMatrix steering_;
};

struct SercomConfig {
  double eta = 1e-2;     ///< step size
  double beta1 = 0.9;    ///< first-moment decay
  double beta2 = 0.999;  ///< second-moment decay
  double eps_v = 1e-8;   ///< denominator guard
  int maxiter = 5000;
  double eps_p = 1e-4;  ///< relative-change stopping tolerance
  CriterionKind criterion = CriterionKind::JBLD;
  bool trace_objective = false;

  /// DomainError on out-of-range values; UnsupportedError if the criterion
  /// is not one of JBLD, AIRM, LE.
  void validate() const;
};

/// Stopping controls for the Euclidean baselines (the Adam constants stay at
/// their SercomConfig defaults).
struct StopRule {
  int maxiter = 5000;
  double eps_p = 1e-4;
};

struct EstimateResult {
  PowerSpectrum spectrum;
  int iterations = 0;
  bool converged = false;
  std::vector<double> objective_trace;  ///< one entry per iteration when tracing
  double wall_time_s = 0.0;
};

/// Relative ramp loading used by SERCOM(LE): δ·m/M is added to the m-th
/// diagonal entry (m = 1..M) with δ = kLeRampScale · tr(R)/M.
inline constexpr double kLeRampScale = 1e-6;

/// Delay-and-sum beamformer output p_d = a_d^H R̂ a_d. The noise_power field
/// of the result is left at 0. ShapeError when the sensor counts differ.
PowerSpectrum init_delay_and_sum(const HermitianMatrix& sample, const SteeringGrid& a);

/// Starting point of every iterative estimator: the delay-and-sum output
/// divided by ‖a_d‖⁴, which puts it in source-power units (a single source of
/// power σ² at grid point d gives p_d ≈ σ²) instead of ‖a_d‖⁴σ².
RVector initial_powers(const HermitianMatrix& sample, const SteeringGrid& a);

/// R(p) for the grid. DomainError for σ_n² ≤ 0 or p with negative entries.
HermitianMatrix grid_model_covariance(const RVector& p, const SteeringGrid& a, double noise_power);

/// ∂D²/∂p_d = a_d^H (∇_R D²) a_d at the given model covariance.
/// JBLD: ∇_R = (R + R̂)^{-1} − ½R^{-1}. AIRM: −2 R^{-1/2} log(R^{-1/2} R̂ R^{-1/2}) R^{-1/2}.
/// LE: the Fréchet-derivative gradient of ‖log R_ramp − log R̂‖², R_ramp the
/// ramp-loaded model. SPICE/AMV: gradients of their criteria. AIRM, LE and
/// SPICE need an HPD sample; DefinitenessError otherwise.
RVector sercom_gradient(CriterionKind criterion, const HermitianMatrix& model, const HermitianMatrix& sample,
                        const SteeringGrid& a);

/// Objective minimized for `criterion` at p: JBLD uses the form without the
/// −½log|R̂| constant; LE is evaluated at the ramp-loaded model.
double matching_objective(CriterionKind criterion, const RVector& p, const HermitianMatrix& sample,
                          const SteeringGrid& a, double noise_power);

/// Gradient of matching_objective in p (includes the ramp's dependence on p for LE).
RVector matching_gradient(CriterionKind criterion, const RVector& p, const HermitianMatrix& sample,
                          const SteeringGrid& a, double noise_power);

/// SERCOM with the configured Riemannian criterion.
EstimateResult sercom_estimate(const HermitianMatrix& sample, const SteeringGrid& a, double noise_power,
                               const SercomConfig& cfg = {});

/// SPICE criterion ‖R^{-1/2}(R̂−R)R̂^{-1/2}‖_F² by projected Adam. HPD sample.
EstimateResult spice_estimate(const HermitianMatrix& sample, const SteeringGrid& a, double noise_power,
                              const StopRule& stop = {});

/// AMV criterion ‖R^{-1/2}(R̂−R)R^{-1/2}‖_F² by projected Adam. HPD sample.
EstimateResult samv_estimate(const HermitianMatrix& sample, const SteeringGrid& a, double noise_power,
                             const StopRule& stop = {});

/// Grid indices of the K most prominent peaks, by descending power.
struct PeakSet {
  std::vector<Index> indices;
  std::vector<double> doas_deg;
  std::vector<double> powers_linear;
};

/// Local maxima of p: strictly above both neighbours, a flat plateau counts
/// once at its leftmost index, endpoints need only their one neighbour. The
/// k largest are kept (ties to the lower index). If fewer than k exist the
/// set is padded with the largest remaining grid values.
/// DomainError for k < 1 or k > D.
PeakSet extract_peaks(const PowerSpectrum& spectrum, std::size_t k);

}  // namespace sercom
