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

#include "sercom/criteria.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include "internal/linalg.hpp"

namespace sercom {

std::string_view to_string(CriterionKind kind) {
  switch (kind) {
    case CriterionKind::AMV:
      return "AMV";
    case CriterionKind::SPICE:
      return "SPICE";
    case CriterionKind::AIRM:
      return "AIRM";
    case CriterionKind::LE:
      return "LE";
    case CriterionKind::JBLD:
      return "JBLD";
  }
  return "?";
}

CriterionKind parse_criterion(std::string_view name) {
  std::string up(name);
  std::transform(up.begin(), up.end(), up.begin(), [](unsigned char c) { return std::toupper(c); });
  for (CriterionKind k : kAllCriteria) {
    if (up == to_string(k)) return k;
  }
  throw DomainError("unknown criterion '" + std::string(name) + "'");
}

EigenSpectrum::EigenSpectrum(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw DomainError("EigenSpectrum: empty");
  for (double v : values_) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw DomainError("EigenSpectrum: eigenvalues must be finite and positive");
    }
  }
  std::sort(values_.begin(), values_.end());
}

namespace {

void require_same_dim(const HermitianMatrix& a, const HermitianMatrix& b, std::string_view what) {
  if (a.dim() != b.dim()) {
    throw ShapeError(std::string(what) + ": dimension mismatch (" + std::to_string(a.dim()) + " vs " +
                     std::to_string(b.dim()) + ")");
  }
}

RVector whitened_eigenvalues(const CMatrix& model, const CMatrix& sample, std::string_view what) {
  const auto llt = internal::checked_llt(model, what);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(internal::whiten(llt, sample), Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

}  // namespace

double dist_airm(const HermitianMatrix& r1, const HermitianMatrix& r2) {
  require_same_dim(r1, r2, "dist_airm");
  r1.require_hpd("dist_airm(r1)");
  r2.require_hpd("dist_airm(r2)");
  const RVector lam = whitened_eigenvalues(r1.matrix(), r2.matrix(), "dist_airm");
  if (lam(0) <= 0.0) throw DefinitenessError("dist_airm: non-positive generalized eigenvalue");
  return lam.array().log().square().sum();
}

double dist_le(const HermitianMatrix& r1, const HermitianMatrix& r2) {
  require_same_dim(r1, r2, "dist_le");
  const HermitianMatrix l1 = matrix_log(r1);
  const HermitianMatrix l2 = matrix_log(r2);
  return (l1.matrix() - l2.matrix()).squaredNorm();
}

double dist_jbld(const HermitianMatrix& r1, const HermitianMatrix& r2) {
  require_same_dim(r1, r2, "dist_jbld");
  r1.require_hpd("dist_jbld(r1)");
  r2.require_hpd("dist_jbld(r2)");
  const CMatrix mid = 0.5 * (r1.matrix() + r2.matrix());
  const double mid_ld = log_det_hpd(mid);
  const double d = mid_ld - 0.5 * log_det_hpd(r1.matrix()) - 0.5 * log_det_hpd(r2.matrix());
  // Exact arithmetic gives d >= 0; clip rounding noise at the minimizer.
  return std::max(d, 0.0);
}

double jbld_objective(const HermitianMatrix& model, const HermitianMatrix& sample) {
  require_same_dim(model, sample, "jbld_objective");
  model.require_hpd("jbld_objective(model)");
  if (!sample.is_psd_or_better()) throw DefinitenessError("jbld_objective: sample must be PSD");
  const CMatrix mid = 0.5 * (model.matrix() + sample.matrix());
  return log_det_hpd(mid) - 0.5 * log_det_hpd(model.matrix());
}

double crit_amv(const HermitianMatrix& model, const HermitianMatrix& sample) {
  require_same_dim(model, sample, "crit_amv");
  model.require_hpd("crit_amv(model)");
  const auto llt = internal::checked_llt(model.matrix(), "crit_amv");
  return internal::whiten(llt, sample.matrix() - model.matrix()).squaredNorm();
}

double crit_spice(const HermitianMatrix& model, const HermitianMatrix& sample) {
  require_same_dim(model, sample, "crit_spice");
  model.require_hpd("crit_spice(model)");
  sample.require_hpd("crit_spice(sample)");
  const auto lr = internal::checked_llt(model.matrix(), "crit_spice(model)");
  const auto ls = internal::checked_llt(sample.matrix(), "crit_spice(sample)");
  // ‖L_R^{-1} X L_S^{-H}‖_F equals ‖R^{-1/2} X R̂^{-1/2}‖_F (unitary factors drop out).
  const CMatrix left = lr.matrixL().solve(sample.matrix() - model.matrix());
  const CMatrix both = ls.matrixL().solve(left.adjoint());
  return both.squaredNorm();
}

double crit_spice_trace_form(const HermitianMatrix& model, const HermitianMatrix& sample) {
  require_same_dim(model, sample, "crit_spice_trace_form");
  model.require_hpd("crit_spice_trace_form(model)");
  sample.require_hpd("crit_spice_trace_form(sample)");
  const auto lr = internal::checked_llt(model.matrix(), "crit_spice_trace_form(model)");
  const auto ls = internal::checked_llt(sample.matrix(), "crit_spice_trace_form(sample)");
  const double t1 = ls.solve(model.matrix()).trace().real();
  const double t2 = lr.solve(sample.matrix()).trace().real();
  return t1 + t2 - 2.0 * static_cast<double>(model.dim());
}

double criterion_value(CriterionKind kind, const HermitianMatrix& model, const HermitianMatrix& sample) {
  switch (kind) {
    case CriterionKind::AMV:
      return crit_amv(model, sample);
    case CriterionKind::SPICE:
      return crit_spice(model, sample);
    case CriterionKind::AIRM:
      return dist_airm(model, sample);
    case CriterionKind::LE:
      return dist_le(model, sample);
    case CriterionKind::JBLD:
      return dist_jbld(model, sample);
  }
  throw DomainError("criterion_value: unknown kind");
}

EigenSpectrum q_spectrum(const HermitianMatrix& model, const HermitianMatrix& sample) {
  require_same_dim(model, sample, "q_spectrum");
  model.require_hpd("q_spectrum(model)");
  sample.require_hpd("q_spectrum(sample)");
  const RVector lam = whitened_eigenvalues(model.matrix(), sample.matrix(), "q_spectrum");
  if (lam(0) <= 0.0) throw DefinitenessError("q_spectrum: non-positive eigenvalue");
  return EigenSpectrum(std::vector<double>(lam.data(), lam.data() + lam.size()));
}

double psi(CriterionKind kind, double lambda) {
  if (kind == CriterionKind::LE) throw UnsupportedError("psi: LE has no eigenvalue decomposition");
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw DomainError("psi: lambda must be positive");
  switch (kind) {
    case CriterionKind::AMV:
      return (lambda - 1.0) * (lambda - 1.0);
    case CriterionKind::SPICE: {
      // λ + 1/λ − 2 is the same value with less cancellation near λ = 1.
      const double d = lambda - 1.0;
      return d * d / lambda;
    }
    case CriterionKind::AIRM: {
      const double l = std::log(lambda);
      return l * l;
    }
    case CriterionKind::JBLD:
      // log((1+λ)/(2√λ)) = log1p(λ/2 − 1/2) − ½ log λ, kept non-negative.
      return std::max(0.0, std::log1p(0.5 * (lambda - 1.0)) - 0.5 * std::log(lambda));
    case CriterionKind::LE:
      break;
  }
  throw DomainError("psi: unknown kind");
}

double criterion_from_spectrum(CriterionKind kind, const EigenSpectrum& spectrum) {
  double acc = 0.0;
  for (double v : spectrum.values()) acc += psi(kind, v);
  return acc;
}

}  // namespace sercom
