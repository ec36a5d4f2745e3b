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

#include "sercom/theory.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "internal/linalg.hpp"

namespace sercom {

namespace {

void require_epsilon(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw DomainError("epsilon must lie in (0, 1)");
}

}  // namespace

double equivalence_constant_amv(double epsilon) {
  require_epsilon(epsilon);
  return 1.0 / (1.0 - epsilon);
}

double equivalence_constant_airm(double epsilon) {
  require_epsilon(epsilon);
  const double q = 1.0 - epsilon;
  return (11.0 + 6.0 * std::abs(std::log(q))) / (12.0 * std::pow(q, 4)) + 1.0 / q;
}

double equivalence_constant_jbld(double epsilon) {
  require_epsilon(epsilon);
  const double q = 1.0 - epsilon;
  return 1.0 / std::pow(q, 4) + 1.0 / std::pow(2.0 - epsilon, 4) + 1.0 / q;
}

EquivalenceBoundReport equivalence_bounds(double epsilon, double rho, double delta, Index dim,
                                          double kappa) {
  require_epsilon(epsilon);
  if (!(rho > 0.0)) throw DomainError("equivalence_bounds: rho must be positive");
  if (!(rho < std::log1p(epsilon))) {
    throw DomainError("equivalence_bounds: rho must be below log(1+epsilon)");
  }
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("equivalence_bounds: delta must lie in (0, 1)");
  if (dim < 1) throw DomainError("equivalence_bounds: dimension must be >= 1");
  if (!(kappa >= 1.0)) throw DomainError("equivalence_bounds: condition number must be >= 1");

  const double margin = epsilon - std::expm1(rho);
  if (!(margin > 0.0)) throw DomainError("equivalence_bounds: non-positive N0 denominator");

  EquivalenceBoundReport rep;
  rep.epsilon = epsilon;
  rep.rho = rho;
  rep.delta = delta;
  rep.dim = dim;
  rep.kappa = kappa;
  rep.n0 = kappa * kappa * std::exp(2.0 * rho) * (static_cast<double>(dim) + std::log(2.0 / delta)) /
           (margin * margin);
  rep.c_amv = equivalence_constant_amv(epsilon);
  rep.c_airm = equivalence_constant_airm(epsilon);
  rep.c_jbld = equivalence_constant_jbld(epsilon);
  return rep;
}

double concentration_epsilon(const HermitianMatrix& model, const HermitianMatrix& sample) {
  if (model.dim() != sample.dim()) throw ShapeError("concentration_epsilon: dimension mismatch");
  model.require_hpd("concentration_epsilon(model)");
  const auto llt = internal::checked_llt(model.matrix(), "concentration_epsilon");
  // R̂R^{-1} − I = (R^{-1} R̂ − I)^H, same spectral norm.
  const CMatrix dev = llt.solve(sample.matrix()) - CMatrix::Identity(model.dim(), model.dim());
  Eigen::JacobiSVD<CMatrix> svd(dev);
  return svd.singularValues()(0);
}

EquivalenceGapCheck check_equivalence_gaps(const HermitianMatrix& model, const HermitianMatrix& sample,
                                           double epsilon) {
  require_epsilon(epsilon);
  EquivalenceGapCheck out;
  out.measured_epsilon = concentration_epsilon(model, sample);
  out.event_holds = out.measured_epsilon <= epsilon;

  const double spice = crit_spice(model, sample);
  out.amv_gap = std::abs(crit_amv(model, sample) - spice);
  out.airm_gap = std::abs(dist_airm(model, sample) - spice);
  out.jbld_gap = std::abs(8.0 * dist_jbld(model, sample) - spice);

  const double m = static_cast<double>(model.dim());
  const double e3 = epsilon * epsilon * epsilon;
  out.amv_bound = m * equivalence_constant_amv(epsilon) * e3;
  out.airm_bound = m * equivalence_constant_airm(epsilon) * e3 * epsilon;
  out.jbld_bound = m * equivalence_constant_jbld(epsilon) * e3 * epsilon;
  return out;
}

double relative_contribution(CriterionKind kind, const EigenSpectrum& spectrum, std::size_t r) {
  if (r >= spectrum.size()) throw DomainError("relative_contribution: index out of range");
  double total = 0.0;
  for (double v : spectrum.values()) total += psi(kind, v);
  if (!(total > 0.0)) {
    throw DegenerateError("relative_contribution: all eigenvalues equal one, contribution undefined");
  }
  return psi(kind, spectrum[r]) / total;
}

bool outlier_hypothesis_holds(const EigenSpectrum& spectrum, std::size_t r, double epsilon) {
  require_epsilon(epsilon);
  if (r >= spectrum.size()) return false;
  for (std::size_t m = 0; m < spectrum.size(); ++m) {
    if (m != r && std::abs(spectrum[m] - 1.0) > epsilon) return false;
  }
  const double threshold = std::max(std::log1p(epsilon), -std::log1p(-epsilon));
  return std::log(spectrum[r]) >= threshold;
}

double spice_to_airm_ratio(double u) {
  if (std::abs(u) < 1e-6) return 1.0 + u * u / 3.0;
  const double f = std::sinh(u) / u;
  return f * f;
}

double jbld_to_airm_ratio(double u) {
  if (std::abs(u) < 1e-4) return 0.125 - u * u / 48.0;
  return std::log(std::cosh(u)) / (4.0 * u * u);
}

}  // namespace sercom
