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

#include "sercom/estimators.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <cmath>
#include <numeric>
#include <string>

#include "internal/linalg.hpp"

namespace sercom {

namespace {

using internal::checked_llt;

CMatrix llt_inverse(const Eigen::LLT<CMatrix>& llt) {
  return symmetrize(llt.solve(CMatrix::Identity(llt.rows(), llt.rows())));
}

// Re(a_d^H G a_d) for every column.
RVector project(const CMatrix& g, const CMatrix& a) {
  const CMatrix ga = g * a;
  return a.conjugate().cwiseProduct(ga).colwise().sum().real().transpose();
}

void check_noise(double noise_power) {
  if (!(noise_power > 0.0) || !std::isfinite(noise_power)) {
    throw DomainError("noise power must be positive and finite, got " + std::to_string(noise_power));
  }
}

void check_shapes(const HermitianMatrix& sample, const SteeringGrid& a) {
  if (sample.dim() != a.num_sensors()) {
    throw ShapeError("sample covariance is " + std::to_string(sample.dim()) + "x" + std::to_string(sample.dim()) +
                     " but the steering matrix has " + std::to_string(a.num_sensors()) + " rows");
  }
}

// Everything about D²(R(p), R̂) that does not change between iterations.
class MatchingProblem {
 public:
  MatchingProblem(CriterionKind kind, const HermitianMatrix& sample, const SteeringGrid& a)
      : kind_(kind), sample_(sample), a_(a.matrix()) {
    check_shapes(sample, a);
    if (kind == CriterionKind::JBLD) {
      if (!sample.is_psd_or_better()) throw DefinitenessError("JBLD matching: sample covariance is indefinite");
    } else {
      sample.require_hpd(std::string(to_string(kind)) + " matching: sample covariance");
    }
    const Index m = sample.dim();
    switch (kind) {
      case CriterionKind::SPICE:
        sample_inv_ = llt_inverse(checked_llt(sample.matrix(), "SPICE matching"));
        break;
      case CriterionKind::LE: {
        const auto eig = internal::hpd_eigen(sample.matrix(), "LE matching");
        sample_log_ = internal::compose(eig.vectors, eig.values.array().log().matrix());
        ramp_profile_ = RVector::LinSpaced(m, 1.0, static_cast<double>(m)) / static_cast<double>(m);
        ramp_weights_ = a_.colwise().squaredNorm().transpose() * (kLeRampScale / static_cast<double>(m));
        break;
      }
      default:
        break;
    }
  }

  CMatrix model(const RVector& p, double noise_power) const {
    const Index m = a_.rows();
    std::vector<Index> active;
    for (Index d = 0; d < p.size(); ++d) {
      if (p(d) > 0.0) active.push_back(d);
    }
    CMatrix b(m, static_cast<Index>(active.size()));
    for (std::size_t k = 0; k < active.size(); ++k) {
      b.col(static_cast<Index>(k)) = a_.col(active[k]) * std::sqrt(p(active[k]));
    }
    CMatrix r = CMatrix::Identity(m, m) * noise_power;
    r.noalias() += b * b.adjoint();
    return symmetrize(r);
  }

  RVector gradient(const CMatrix& r) const {
    switch (kind_) {
      case CriterionKind::JBLD: {
        const CMatrix g = llt_inverse(checked_llt(r + sample_.matrix(), "JBLD gradient")) -
                          0.5 * llt_inverse(checked_llt(r, "JBLD gradient"));
        return project(g, a_);
      }
      case CriterionKind::AIRM: {
        const auto llt = checked_llt(r, "AIRM gradient");
        const CMatrix w = internal::whiten(llt, sample_.matrix());
        const auto eig = internal::hpd_eigen(w, "AIRM gradient");
        const CMatrix logw = internal::compose(eig.vectors, eig.values.array().log().matrix());
        // L^{-H} log(W) L^{-1}
        const CMatrix x = llt.matrixU().solve(logw);
        const CMatrix g = llt.matrixU().solve(CMatrix(x.adjoint())).adjoint();
        return project(symmetrize(-2.0 * g), a_);
      }
      case CriterionKind::LE: {
        const auto eig = internal::hpd_eigen(ramp(r), "LE gradient");
        const CMatrix e = internal::compose(eig.vectors, eig.values.array().log().matrix()) - sample_log_;
        const CMatrix g = 2.0 * internal::frechet_log(eig, e);
        const double ramp_term = (g.diagonal().real().array() * ramp_profile_.array()).sum();
        return project(g, a_) + ramp_weights_ * ramp_term;
      }
      case CriterionKind::SPICE: {
        const CMatrix ri = llt_inverse(checked_llt(r, "SPICE gradient"));
        const CMatrix g = sample_inv_ - ri * sample_.matrix() * ri;
        return project(symmetrize(g), a_);
      }
      case CriterionKind::AMV: {
        const CMatrix ri = llt_inverse(checked_llt(r, "AMV gradient"));
        const CMatrix s = ri * sample_.matrix();
        const CMatrix x = s * ri;
        return project(symmetrize(2.0 * x - 2.0 * s * x), a_);
      }
    }
    throw UnsupportedError("unknown criterion");
  }

  double objective(const CMatrix& r) const {
    const auto model = HermitianMatrix::from_matrix(kind_ == CriterionKind::LE ? ramp(r) : r);
    switch (kind_) {
      case CriterionKind::JBLD:
        return jbld_objective(model, sample_);
      case CriterionKind::AIRM:
        return dist_airm(model, sample_);
      case CriterionKind::LE:
        return dist_le(model, sample_);
      case CriterionKind::SPICE:
        return crit_spice(model, sample_);
      case CriterionKind::AMV:
        return crit_amv(model, sample_);
    }
    throw UnsupportedError("unknown criterion");
  }

 private:
  CMatrix ramp(const CMatrix& r) const {
    const double delta = kLeRampScale * r.trace().real() / static_cast<double>(r.rows());
    CMatrix out = r;
    out.diagonal().array() += (delta * ramp_profile_.array()).cast<cdouble>();
    return out;
  }

  CriterionKind kind_;
  const HermitianMatrix& sample_;
  const CMatrix& a_;
  CMatrix sample_inv_;
  CMatrix sample_log_;
  RVector ramp_profile_;
  RVector ramp_weights_;
};

struct AdamSettings {
  double eta;
  double beta1;
  double beta2;
  double eps_v;
  int maxiter;
  double eps_p;
  bool trace;
};

EstimateResult projected_adam(CriterionKind kind, const HermitianMatrix& sample, const SteeringGrid& a,
                              double noise_power, const AdamSettings& s) {
  const auto start = std::chrono::steady_clock::now();
  check_noise(noise_power);
  const MatchingProblem problem(kind, sample, a);

  RVector p = initial_powers(sample, a);
  const Index d = p.size();
  RVector m1 = RVector::Zero(d);
  RVector m2 = RVector::Zero(d);
  int iterations = 0;
  bool converged = false;
  std::vector<double> trace;
  double beta1_pow = 1.0;
  double beta2_pow = 1.0;

  for (int i = 1; i <= s.maxiter; ++i) {
    const RVector g = problem.gradient(problem.model(p, noise_power));
    m1 = s.beta1 * m1 + (1.0 - s.beta1) * g;
    m2 = s.beta2 * m2 + (1.0 - s.beta2) * g.cwiseAbs2();
    beta1_pow *= s.beta1;
    beta2_pow *= s.beta2;
    const RVector mhat = m1 / (1.0 - beta1_pow);
    const RVector vhat = m2 / (1.0 - beta2_pow);
    RVector next = (p.array() - s.eta * mhat.array() / (vhat.array().sqrt() + s.eps_v)).cwiseMax(0.0);
    assert((next.array() >= 0.0).all());

    const double prev_norm = p.norm();
    bool stop = false;
    if (prev_norm > 0.0) {
      stop = (next - p).norm() / prev_norm < s.eps_p;
    } else {
      stop = next.norm() == 0.0;
    }
    p = std::move(next);
    iterations = i;
    if (s.trace) trace.push_back(problem.objective(problem.model(p, noise_power)));
    if (stop) {
      converged = true;
      break;
    }
  }

  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return EstimateResult{PowerSpectrum{a.grid(), std::move(p), noise_power}, iterations, converged, std::move(trace),
                        elapsed};
}

AdamSettings settings_from(const SercomConfig& cfg) {
  return {cfg.eta, cfg.beta1, cfg.beta2, cfg.eps_v, cfg.maxiter, cfg.eps_p, cfg.trace_objective};
}

AdamSettings settings_from(const StopRule& stop) {
  if (stop.maxiter < 1) throw DomainError("maxiter must be at least 1");
  if (!(stop.eps_p >= 0.0)) throw DomainError("eps_p must be nonnegative");
  SercomConfig defaults;
  defaults.maxiter = stop.maxiter;
  defaults.eps_p = stop.eps_p;
  return settings_from(defaults);
}

}  // namespace

SteeringGrid::SteeringGrid(AngularGrid grid, CMatrix steering) : grid_(std::move(grid)), steering_(std::move(steering)) {
  if (steering_.cols() != grid_.size()) {
    throw ShapeError("steering matrix has " + std::to_string(steering_.cols()) + " columns for a grid of " +
                     std::to_string(grid_.size()) + " directions");
  }
  if (steering_.rows() < 1) throw ShapeError("steering matrix has no rows");
}

SteeringGrid SteeringGrid::build(const ArrayGeometry& geom, const AngularGrid& grid) {
  return SteeringGrid(grid, steering_matrix(geom, grid));
}

void SercomConfig::validate() const {
  if (!(eta > 0.0)) throw DomainError("eta must be positive");
  if (!(beta1 >= 0.0 && beta1 < 1.0) || !(beta2 >= 0.0 && beta2 < 1.0)) {
    throw DomainError("beta1 and beta2 must lie in [0, 1)");
  }
  if (!(eps_v > 0.0)) throw DomainError("eps_v must be positive");
  if (maxiter < 1) throw DomainError("maxiter must be at least 1");
  if (!(eps_p >= 0.0)) throw DomainError("eps_p must be nonnegative");
  if (criterion != CriterionKind::JBLD && criterion != CriterionKind::AIRM && criterion != CriterionKind::LE) {
    throw UnsupportedError("SERCOM criterion must be JBLD, AIRM or LE, got " + std::string(to_string(criterion)));
  }
}

PowerSpectrum init_delay_and_sum(const HermitianMatrix& sample, const SteeringGrid& a) {
  check_shapes(sample, a);
  const CMatrix& steer = a.matrix();
  RVector p = project(sample.matrix(), steer).cwiseMax(0.0);
  return PowerSpectrum{a.grid(), std::move(p), 0.0};
}

RVector initial_powers(const HermitianMatrix& sample, const SteeringGrid& a) {
  RVector p = init_delay_and_sum(sample, a).p;
  const RVector norms = a.matrix().colwise().squaredNorm().transpose();
  return p.cwiseQuotient(norms.cwiseAbs2());
}

HermitianMatrix grid_model_covariance(const RVector& p, const SteeringGrid& a, double noise_power) {
  return model_covariance(PowerSpectrum{a.grid(), p, noise_power}, a.matrix());
}

RVector sercom_gradient(CriterionKind criterion, const HermitianMatrix& model, const HermitianMatrix& sample,
                        const SteeringGrid& a) {
  model.require_hpd("gradient: model covariance");
  if (model.dim() != sample.dim()) throw ShapeError("gradient: model and sample sizes differ");
  const MatchingProblem problem(criterion, sample, a);
  return problem.gradient(model.matrix());
}

double matching_objective(CriterionKind criterion, const RVector& p, const HermitianMatrix& sample,
                          const SteeringGrid& a, double noise_power) {
  const HermitianMatrix r = grid_model_covariance(p, a, noise_power);
  const MatchingProblem problem(criterion, sample, a);
  return problem.objective(r.matrix());
}

RVector matching_gradient(CriterionKind criterion, const RVector& p, const HermitianMatrix& sample,
                          const SteeringGrid& a, double noise_power) {
  return sercom_gradient(criterion, grid_model_covariance(p, a, noise_power), sample, a);
}

EstimateResult sercom_estimate(const HermitianMatrix& sample, const SteeringGrid& a, double noise_power,
                               const SercomConfig& cfg) {
  cfg.validate();
  return projected_adam(cfg.criterion, sample, a, noise_power, settings_from(cfg));
}

EstimateResult spice_estimate(const HermitianMatrix& sample, const SteeringGrid& a, double noise_power,
                              const StopRule& stop) {
  return projected_adam(CriterionKind::SPICE, sample, a, noise_power, settings_from(stop));
}

EstimateResult samv_estimate(const HermitianMatrix& sample, const SteeringGrid& a, double noise_power,
                             const StopRule& stop) {
  return projected_adam(CriterionKind::AMV, sample, a, noise_power, settings_from(stop));
}

PeakSet extract_peaks(const PowerSpectrum& spectrum, std::size_t k) {
  const RVector& p = spectrum.p;
  const auto d = static_cast<std::size_t>(p.size());
  if (spectrum.grid.size() != p.size()) throw ShapeError("spectrum and grid sizes differ");
  if (k < 1 || k > d) {
    throw DomainError("peak count must lie in [1, " + std::to_string(d) + "], got " + std::to_string(k));
  }
  auto at = [&](std::size_t i) { return p(static_cast<Index>(i)); };

  std::vector<std::size_t> peaks;
  std::vector<bool> is_peak(d, false);
  for (std::size_t i = 0; i < d;) {
    std::size_t j = i;  // plateau [i, j]
    while (j + 1 < d && at(j + 1) == at(i)) ++j;
    const bool left_ok = i == 0 || at(i - 1) < at(i);
    const bool right_ok = j + 1 == d || at(j + 1) < at(i);
    if (left_ok && right_ok) {
      peaks.push_back(i);
      is_peak[i] = true;
    }
    i = j + 1;
  }
  auto by_power = [&](std::size_t x, std::size_t y) { return at(x) > at(y) || (at(x) == at(y) && x < y); };
  std::stable_sort(peaks.begin(), peaks.end(), by_power);
  if (peaks.size() > k) peaks.resize(k);

  if (peaks.size() < k) {
    std::vector<std::size_t> rest;
    for (std::size_t i = 0; i < d; ++i) {
      if (!is_peak[i]) rest.push_back(i);
    }
    std::stable_sort(rest.begin(), rest.end(), by_power);
    for (std::size_t i = 0; peaks.size() < k; ++i) peaks.push_back(rest[i]);
    std::stable_sort(peaks.begin(), peaks.end(), by_power);
  }

  PeakSet out;
  for (std::size_t i : peaks) {
    out.indices.push_back(static_cast<Index>(i));
    out.doas_deg.push_back(spectrum.grid[static_cast<Index>(i)]);
    out.powers_linear.push_back(at(i));
  }
  return out;
}

}  // namespace sercom
