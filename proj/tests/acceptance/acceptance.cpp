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

// sercom_acceptance: end-to-end acceptance checks, one PASS/FAIL line each.
//
//   sercom_acceptance                       # everything
//   sercom_acceptance --criterion snr_sweep      # one criterion
//   sercom_acceptance --list

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sercom/baselines.hpp"
#include "sercom/criteria.hpp"
#include "sercom/estimators.hpp"
#include "sercom/experiment.hpp"
#include "sercom/theory.hpp"
#include "support.hpp"

namespace {

using namespace sercom;
using sercom::testing::random_hermitian;
using sercom::testing::random_hpd;
using sercom::testing::random_invertible;
using sercom::testing::rel_err;

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void check(bool ok, const std::string& what) {
    if (!ok) pass = false;
    notes.push_back(std::string(ok ? "  ok   " : "  FAIL ") + what);
  }
  void info(const std::string& what) { notes.push_back("       " + what); }
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

struct Context {
  unsigned threads = 0;
  std::size_t trials = 100;
};

struct Criterion {
  std::string name;
  std::string title;
  double budget_s;
  std::function<void(Outcome&, const Context&)> run;
};

// ---------------------------------------------------------------------------
// Geometry and theory

void geometry(Outcome& out, const Context&) {
  Rng rng(1001);
  int sym_bad = 0;
  int zero_bad = 0;
  for (int t = 0; t < 200; ++t) {
    const auto a = random_hpd(rng, 5, 20.0);
    const auto b = random_hpd(rng, 5, 20.0);
    if (rel_err(dist_airm(a, b), dist_airm(b, a)) > 1e-10) ++sym_bad;
    if (rel_err(dist_le(a, b), dist_le(b, a)) > 1e-10) ++sym_bad;
    if (rel_err(dist_jbld(a, b), dist_jbld(b, a)) > 1e-10) ++sym_bad;
    for (auto k : kAllCriteria) {
      if (!(std::abs(criterion_value(k, a, a)) < 1e-10)) ++zero_bad;
      if (!(criterion_value(k, a, b) > 0.0)) ++zero_bad;
    }
  }
  out.check(sym_bad == 0, fmt("symmetry of AIRM/LE/JBLD on 200 pairs (%d violations)", sym_bad));
  out.check(zero_bad == 0, fmt("zero iff equal for all five criteria on 200 pairs (%d violations)", zero_bad));

  int tri_bad = 0;
  double worst = -1e300;
  for (int t = 0; t < 500; ++t) {
    const auto a = random_hpd(rng, 4, 50.0);
    const auto b = random_hpd(rng, 4, 50.0);
    const auto c = random_hpd(rng, 4, 50.0);
    const double ab = std::sqrt(std::max(dist_jbld(a, b), 0.0));
    const double bc = std::sqrt(std::max(dist_jbld(b, c), 0.0));
    const double ac = std::sqrt(std::max(dist_jbld(a, c), 0.0));
    worst = std::max(worst, ac - ab - bc);
    if (ac > ab + bc + 1e-12) ++tri_bad;
  }
  out.check(tri_bad == 0,
            fmt("sqrt-JBLD triangle inequality on 500 triples (%d violations, max slack %.3g)", tri_bad, worst));

  double inv_err = 0.0;
  for (int t = 0; t < 100; ++t) {
    const auto a = random_hpd(rng, 5, 20.0);
    const auto b = random_hpd(rng, 5, 20.0);
    const CMatrix g = random_invertible(rng, 5);
    const auto ga = HermitianMatrix::from_matrix(g * a.matrix() * g.adjoint());
    const auto gb = HermitianMatrix::from_matrix(g * b.matrix() * g.adjoint());
    inv_err = std::max(inv_err, rel_err(dist_airm(ga, gb), dist_airm(a, b)));
    inv_err = std::max(inv_err, rel_err(dist_jbld(ga, gb), dist_jbld(a, b)));
  }
  out.check(inv_err < 1e-8, fmt("AIRM and JBLD affine invariance, max relative error %.2e < 1e-8", inv_err));
}

void psi_sum(Outcome& out, const Context&) {
  Rng rng(1002);
  double worst = 0.0;
  for (int t = 0; t < 20; ++t) {
    const auto model = random_hpd(rng, 6, 10.0);
    const auto sample = random_hpd(rng, 6, 10.0);
    const auto q = q_spectrum(model, sample);
    for (auto k : {CriterionKind::AMV, CriterionKind::SPICE, CriterionKind::AIRM, CriterionKind::JBLD}) {
      worst = std::max(worst, rel_err(criterion_from_spectrum(k, q), criterion_value(k, model, sample)));
    }
  }
  out.check(worst < 1e-9, fmt("20 pairs, M=6: max relative error %.2e < 1e-9", worst));
}

// Gaussian snapshots with covariance L L^H.
HermitianMatrix gaussian_sample(Rng& rng, const CMatrix& chol, Index n) {
  const Index m = chol.rows();
  std::normal_distribution<double> g(0.0, std::sqrt(0.5));
  CMatrix z(m, n);
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < m; ++i) {
      const double re = g(rng);
      const double im = g(rng);
      z(i, j) = cdouble(re, im);
    }
  }
  const CMatrix y = chol * z;
  return HermitianMatrix::from_matrix(y * y.adjoint() / static_cast<double>(n));
}

void equivalence(Outcome& out, const Context&) {
  const Index m = 8;
  const double eps = 0.3;
  const double rho = 0.5 * std::log(1.3);
  const double delta = 0.05;
  Rng rng(1003);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int accepted = 0;
  int attempts = 0;
  int violations = 0;
  int tight_violations = 0;
  double max_ratio = 0.0;
  Index n_max = 0;
  while (accepted < 200 && attempts < 2000) {
    ++attempts;
    const auto bar = random_hpd(rng, m, 5.0);
    const auto ev = Eigen::SelfAdjointEigenSolver<CMatrix>(bar.matrix()).eigenvalues();
    const double kappa = ev.maxCoeff() / ev.minCoeff();
    const auto rep = equivalence_bounds(eps, rho, delta, m, kappa);
    const Index n = static_cast<Index>(std::ceil(rep.n0));
    n_max = std::max(n_max, n);

    // Model inside the AIRM ball: R = R̄^{1/2} exp(H) R̄^{1/2}, ‖H‖_F ≤ ρ.
    const CMatrix h0 = random_hermitian(rng, m).matrix();
    const CMatrix h = h0 * (rho * u(rng) / h0.norm());
    Eigen::SelfAdjointEigenSolver<CMatrix> hs(h);
    const CMatrix exp_h = hs.eigenvectors() * hs.eigenvalues().array().exp().matrix().asDiagonal() *
                          hs.eigenvectors().adjoint();
    const auto halves = matrix_sqrt_and_invsqrt(bar);
    const auto model = HermitianMatrix::from_matrix(halves.sqrt.matrix() * exp_h * halves.sqrt.matrix());

    const Eigen::LLT<CMatrix> llt(bar.matrix());
    const auto sample = gaussian_sample(rng, llt.matrixL(), n);
    const auto chk = check_equivalence_gaps(model, sample, eps);
    if (!chk.event_holds) continue;
    ++accepted;
    if (!chk.within_bounds()) ++violations;
    max_ratio = std::max({max_ratio, chk.amv_gap / chk.amv_bound, chk.airm_gap / chk.airm_bound,
                          chk.jbld_gap / chk.jbld_bound});
    const auto tight = check_equivalence_gaps(model, sample, chk.measured_epsilon);
    if (!tight.within_bounds()) ++tight_violations;
  }
  out.info(fmt("%d draws, %d with ||R^R^-1 - I|| <= eps (event rate %.3f, bound guarantees >= %.2f); N up to %ld",
               attempts, accepted, static_cast<double>(accepted) / attempts, 1.0 - delta, static_cast<long>(n_max)));
  out.check(accepted == 200, fmt("200 conditional trials collected (%d)", accepted));
  out.check(violations == 0, fmt("gap bounds at eps=0.3: %d violations (largest gap/bound %.3g)", violations, max_ratio));
  out.check(tight_violations == 0, fmt("gap bounds at the measured eps: %d violations", tight_violations));
}

void outlier_order(Outcome& out, const Context&) {
  Rng rng(1004);
  std::uniform_int_distribution<int> mdist(2, 16);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const CriterionKind order[] = {CriterionKind::AMV, CriterionKind::SPICE, CriterionKind::AIRM, CriterionKind::JBLD};
  int checked = 0;
  int violations = 0;
  while (checked < 1000) {
    const int m = mdist(rng);
    const double eps = 0.01 + 0.89 * u(rng);
    const double thr = std::max(std::log1p(eps), -std::log1p(-eps));
    std::vector<double> lam;
    for (int i = 0; i < m - 1; ++i) lam.push_back(1.0 - eps + 2.0 * eps * u(rng));
    const double lr = std::exp(thr * (1.0 + 3.0 * u(rng)));
    lam.push_back(lr);
    const EigenSpectrum spec(lam);
    const auto r = static_cast<std::size_t>(std::find(spec.values().begin(), spec.values().end(), lr) -
                                            spec.values().begin());
    if (!outlier_hypothesis_holds(spec, r, eps)) continue;
    ++checked;
    double prev = 2.0;
    for (auto k : order) {
      const double s = relative_contribution(k, spec, r);
      if (s > prev * (1.0 + 1e-12)) {
        ++violations;
        break;
      }
      prev = s;
    }
  }
  out.check(violations == 0, fmt("s(AMV) >= s(SPICE) >= s(AIRM) >= s(JBLD) on %d spectra, M in 2..16: %d violations",
                                 checked, violations));
}

// Random ascending grid of d directions in (0°, 180°).
AngularGrid random_grid(Rng& rng, int d) {
  std::uniform_real_distribution<double> u(1.0, 179.0);
  std::vector<double> deg;
  while (static_cast<int>(deg.size()) < d) {
    const double v = u(rng);
    if (std::none_of(deg.begin(), deg.end(), [&](double x) { return std::abs(x - v) < 0.5; })) deg.push_back(v);
  }
  std::sort(deg.begin(), deg.end());
  return AngularGrid(deg);
}

void gradients(Outcome& out, const Context&) {
  Rng rng(1005);
  std::uniform_int_distribution<int> mdist(3, 6);
  std::uniform_int_distribution<int> ddist(5, 15);
  std::uniform_real_distribution<double> pdist(0.1, 2.0);
  double worst[3] = {0.0, 0.0, 0.0};
  const CriterionKind kinds[3] = {CriterionKind::JBLD, CriterionKind::AIRM, CriterionKind::LE};
  const int instances = 25;
  for (int t = 0; t < instances; ++t) {
    const int m = mdist(rng);
    const int d = ddist(rng);
    const auto a = SteeringGrid::build(ArrayGeometry::ula(m), random_grid(rng, d));
    RVector p(d);
    for (int i = 0; i < d; ++i) p(i) = pdist(rng);
    const double noise = 0.2 + pdist(rng);
    const CMatrix y = sercom::testing::random_complex(rng, m, 3 * m);
    const auto sample = HermitianMatrix::from_matrix(y * y.adjoint() / (3.0 * m));
    for (int c = 0; c < 3; ++c) {
      const RVector g = matching_gradient(kinds[c], p, sample, a, noise);
      RVector fd(d);
      for (int i = 0; i < d; ++i) {
        const double h = 1e-6 * p(i);
        RVector up = p;
        RVector dn = p;
        up(i) += h;
        dn(i) -= h;
        fd(i) = (matching_objective(kinds[c], up, sample, a, noise) -
                 matching_objective(kinds[c], dn, sample, a, noise)) /
                (2 * h);
      }
      worst[c] = std::max(worst[c], (g - fd).norm() / g.norm());
    }
  }
  for (int c = 0; c < 3; ++c) {
    out.check(worst[c] < 1e-5, fmt("SERCOM(%s): %d instances, max relative error %.2e < 1e-5",
                                   std::string(to_string(kinds[c])).c_str(), instances, worst[c]));
  }
}

// ---------------------------------------------------------------------------
// Estimators

void noiseless(Outcome& out, const Context&) {
  const auto a = SteeringGrid::build(ArrayGeometry::ula(8), AngularGrid::from_range(0, 180, 3));
  const double noise = 0.1;
  RVector p_true = RVector::Zero(61);
  p_true(15) = 1.0;
  p_true(25) = 1.0;
  const auto sample = grid_model_covariance(p_true, a, noise);
  out.info(fmt("JBLD divergence at the truth: %.2e", dist_jbld(grid_model_covariance(p_true, a, noise), sample)));
  const std::pair<const char*, std::function<EstimateResult()>> runs[] = {
      {"SERCOM(JBLD)", [&] { return sercom_estimate(sample, a, noise); }},
      {"SPICE", [&] { return spice_estimate(sample, a, noise); }},
      {"SAMV", [&] { return samv_estimate(sample, a, noise); }},
  };
  for (const auto& [name, run] : runs) {
    const auto res = run();
    const auto peaks = extract_peaks(res.spectrum, 2);
    std::vector<Index> idx = peaks.indices;
    std::sort(idx.begin(), idx.end());
    double max_rel = 0.0;
    for (double pw : peaks.powers_linear) max_rel = std::max(max_rel, std::abs(pw - 1.0));
    out.check(idx == std::vector<Index>{15, 25} && max_rel < 0.1,
              fmt("%s: peaks at %ld, %ld (truth 15, 25), power error %.2e, %d iterations", name,
                  static_cast<long>(idx[0]), static_cast<long>(idx[1]), max_rel, res.iterations));
  }
}

void psd_input(Outcome& out, const Context&) {
  const auto geom = ArrayGeometry::ula(12);
  const auto a = SteeringGrid::build(geom, AngularGrid::standard());
  SourceScene scene;
  scene.directions_deg = {35.0, 43.0, 51.0};
  scene.powers_linear = {1.0, 1.0, db_to_linear(-5.0)};
  scene.noise_power = 1.0;
  const auto sample = sample_covariance(simulate_snapshots(scene, geom, 6, 1006));
  out.info(fmt("N=6, M=12: sample graded %s", std::string(to_string(sample.definiteness())).c_str()));
  bool jbld_ok = false;
  try {
    const auto res = sercom_estimate(sample, a, scene.noise_power);
    jbld_ok = res.spectrum.p.allFinite() && res.spectrum.p.minCoeff() >= 0.0;
    const auto peaks = extract_peaks(res.spectrum, 3);
    out.info(fmt("SERCOM(JBLD): %d iterations, peaks at %.1f, %.1f, %.1f deg", res.iterations, peaks.doas_deg[0],
                 peaks.doas_deg[1], peaks.doas_deg[2]));
  } catch (const std::exception& e) {
    out.info(std::string("SERCOM(JBLD) threw: ") + e.what());
  }
  out.check(jbld_ok, "SERCOM(JBLD) completes on the rank-deficient sample");
  bool airm_raised = false;
  try {
    SercomConfig cfg;
    cfg.criterion = CriterionKind::AIRM;
    sercom_estimate(sample, a, scene.noise_power, cfg);
  } catch (const DefinitenessError&) {
    airm_raised = true;
  }
  out.check(airm_raised, "SERCOM(AIRM) raises DefinitenessError");
}

// ---------------------------------------------------------------------------
// Monte Carlo trends

MetricsSummary sweep(const std::string& preset_name, const std::vector<double>& values,
                     const std::vector<Method>& methods, const Context& ctx, std::size_t trials, Outcome& out) {
  ExperimentConfig cfg = preset(preset_name);
  if (!values.empty()) cfg.sweep_values = values;
  cfg.estimators = methods;
  cfg.trials = trials;
  SweepOptions opts;
  opts.threads = ctx.threads;
  const auto res = run_sweep(cfg, opts);
  std::string head = fmt("%-14s", res.summary.sweep_variable.c_str());
  for (double v : cfg.sweep_values) head += fmt(" %9g", v);
  out.info(head + fmt("   (L=%zu)", trials));
  for (Method m : methods) {
    const std::string name(to_string(m));
    std::string doa = fmt("%-14s", name.c_str());
    std::string pw = fmt("%-14s", "  power");
    std::string it = fmt("%-14s", "  iterations");
    for (double v : cfg.sweep_values) {
      const auto& c = res.summary.cell(name, v);
      doa += fmt(" %9.4f", c.rmse_doa_deg);
      pw += fmt(" %9.4f", c.rmse_power);
      it += fmt(" %9.0f", c.mean_iterations);
    }
    out.info(doa);
    out.info(pw);
    if (m != Method::Esprit) out.info(it);
  }
  std::string crb = fmt("%-14s", "CRB");
  for (const auto& p : res.summary.crb) crb += p.degenerate ? fmt(" %9s", "degen") : fmt(" %9.4f", p.rmse_deg);
  out.info(crb);
  return res.summary;
}

std::vector<double> doa_curve(const MetricsSummary& s, Method m, const std::vector<double>& values) {
  std::vector<double> v;
  for (double x : values) v.push_back(s.cell(std::string(to_string(m)), x).rmse_doa_deg);
  return v;
}

// Monotone in the given direction, allowing one adjacent inversion of at most 10%.
bool monotone_with_slack(const std::vector<double>& v, bool increasing, std::string& detail) {
  int inversions = 0;
  bool small = true;
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    const double a = v[i];
    const double b = v[i + 1];
    const bool bad = increasing ? b < a : b > a;
    if (!bad) continue;
    ++inversions;
    const double rel = increasing ? (a - b) / a : (b - a) / a;
    if (rel > 0.10) small = false;
    detail += fmt(" [%zu->%zu: %+.1f%%]", i, i + 1, 100.0 * (b - a) / a);
  }
  return inversions == 0 || (inversions == 1 && small);
}

const std::vector<Method> kFive = {Method::SercomJbld, Method::SercomAirm, Method::SercomLe, Method::Spice,
                                   Method::Samv};

void snr_sweep(Outcome& out, const Context& ctx) {
  const auto values = preset("snr_sweep").sweep_values;
  const auto s = sweep("snr_sweep", {}, kFive, ctx, ctx.trials, out);
  for (Method m : kFive) {
    std::string detail;
    const bool ok = monotone_with_slack(doa_curve(s, m, values), false, detail);
    out.check(ok, fmt("(a) %s DOA RMSE non-increasing in SNR%s", std::string(to_string(m)).c_str(), detail.c_str()));
  }
  for (double v : {-4.5, -3.0}) {
    const double j = s.cell("SERCOM(JBLD)", v).rmse_doa_deg;
    const double sp = s.cell("SPICE", v).rmse_doa_deg;
    const double sa = s.cell("SAMV", v).rmse_doa_deg;
    out.check(j <= sp && j <= sa,
              fmt("(b) SNR %g dB: DOA RMSE JBLD %.3f <= SPICE %.3f and <= SAMV %.3f", v, j, sp, sa));
  }
  for (double v : values) {
    const double j = s.cell("SERCOM(JBLD)", v).rmse_power;
    const double sp = s.cell("SPICE", v).rmse_power;
    const double sa = s.cell("SAMV", v).rmse_power;
    out.check(j <= sp && j <= sa,
              fmt("(c) SNR %g dB: power RMSE JBLD %.4f <= SPICE %.4f and <= SAMV %.4f", v, j, sp, sa));
  }
}

void snapshot_sweep(Outcome& out, const Context& ctx) {
  const std::vector<double> values = {12.0, 24.0};
  const auto s = sweep("snapshot_sweep", values, {Method::SercomJbld, Method::Spice}, ctx, ctx.trials, out);
  for (double v : values) {
    const double j = s.cell("SERCOM(JBLD)", v).rmse_doa_deg;
    const double sp = s.cell("SPICE", v).rmse_doa_deg;
    out.check(j <= sp, fmt("N=%g: DOA RMSE JBLD %.3f <= SPICE %.3f", v, j, sp));
  }
}

void offgrid(Outcome& out, const Context& ctx) {
  const std::vector<double> values = {0.0, 0.25, 0.5};
  std::vector<Method> methods = kFive;
  methods.push_back(Method::Esprit);
  const auto s = sweep("offgrid", values, methods, ctx, ctx.trials, out);
  for (Method m : kFive) {
    std::string detail;
    const bool ok = monotone_with_slack(doa_curve(s, m, values), true, detail);
    out.check(ok, fmt("%s DOA RMSE non-decreasing in offset%s", std::string(to_string(m)).c_str(), detail.c_str()));
  }
  const auto e = doa_curve(s, Method::Esprit, values);
  const double lo = *std::min_element(e.begin(), e.end());
  const double hi = *std::max_element(e.begin(), e.end());
  out.check(hi / lo - 1.0 < 0.15, fmt("ESPRIT DOA RMSE varies by %.1f%% < 15%% across offsets", 100.0 * (hi / lo - 1.0)));
}

void correlation(Outcome& out, const Context& ctx) {
  const std::vector<double> values = {0.9, 1.0};
  const auto s = sweep("correlation", values, {Method::SercomJbld, Method::Spice, Method::Esprit}, ctx, ctx.trials, out);
  for (double v : values) {
    const double j = s.cell("SERCOM(JBLD)", v).rmse_doa_deg;
    const double sp = s.cell("SPICE", v).rmse_doa_deg;
    const double es = s.cell("ESPRIT", v).rmse_doa_deg;
    out.check(j <= es && j <= sp, fmt("rho=%g: DOA RMSE JBLD %.3f <= ESPRIT %.3f and <= SPICE %.3f", v, j, es, sp));
  }
}

void runtime(Outcome& out, const Context& ctx) {
  ExperimentConfig cfg = preset("runtime_m120");
  cfg.estimators = {Method::SercomJbld, Method::SercomAirm, Method::SercomLe};
  cfg.trials = 20;
  SweepOptions opts;
  // Timing runs one estimate at a time so runs do not compete for cores.
  opts.threads = 1;
  const auto res = run_sweep(cfg, opts);
  (void)ctx;
  auto med = [&](const char* n) { return res.summary.cell(n, 0.0).wall_time_s.median; };
  for (const char* n : {"SERCOM(JBLD)", "SERCOM(AIRM)", "SERCOM(LE)"}) {
    const auto& c = res.summary.cell(n, 0.0);
    out.info(fmt("%-13s median %.3f s  [p25 %.3f, p75 %.3f]  mean iterations %.0f  DOA RMSE %.3f", n, c.wall_time_s.median,
                 c.wall_time_s.p25, c.wall_time_s.p75, c.mean_iterations, c.rmse_doa_deg));
  }
  out.check(med("SERCOM(JBLD)") < med("SERCOM(AIRM)"),
            fmt("median wall time JBLD %.3f s < AIRM %.3f s", med("SERCOM(JBLD)"), med("SERCOM(AIRM)")));
  out.check(med("SERCOM(JBLD)") < med("SERCOM(LE)"),
            fmt("median wall time JBLD %.3f s < LE %.3f s", med("SERCOM(JBLD)"), med("SERCOM(LE)")));
}

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all = {
      {"geometry", "Geometry identities", 30.0, geometry},
      {"psi_sum", "psi-sum oracle", 5.0, psi_sum},
      {"equivalence", "Asymptotic equivalence bounds", 120.0, equivalence},
      {"outlier_order", "Outlier robustness ordering", 10.0, outlier_order},
      {"gradients", "SERCOM gradients vs finite differences", 60.0, gradients},
      {"noiseless", "Noiseless on-grid recovery", 60.0, noiseless},
      {"snr_sweep", "SNR sweep trends", 1800.0, snr_sweep},
      {"snapshot_sweep", "Snapshot sweep at N=M and N=2M", 1800.0, snapshot_sweep},
      {"offgrid", "Off-grid offset trends", 900.0, offgrid},
      {"correlation", "Correlated sources", 900.0, correlation},
      {"runtime", "Runtime scaling at M=120", 1800.0, runtime},
      {"psd_input", "Rank-deficient sample path", 60.0, psd_input},
  };
  return all;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SERCOM acceptance checks"};
  std::vector<std::string> selected;
  Context ctx;
  bool list = false;
  bool verbose = false;
  app.add_option("--criterion,-c", selected, "Run only these criteria");
  app.add_option("--threads", ctx.threads, "Worker threads for Monte Carlo sweeps (0 = all cores)");
  app.add_option("--trials", ctx.trials, "Monte Carlo trials per sweep point")->check(CLI::PositiveNumber);
  app.add_flag("--list", list, "List criteria and exit");
  app.add_flag("--verbose,-v", verbose, "Print the individual checks");
  CLI11_PARSE(app, argc, argv);

  if (list) {
    for (const auto& c : criteria()) std::printf("%-10s %s (budget %.0f s)\n", c.name.c_str(), c.title.c_str(), c.budget_s);
    return 0;
  }
  for (const auto& s : selected) {
    if (std::none_of(criteria().begin(), criteria().end(), [&](const Criterion& c) { return c.name == s; })) {
      std::fprintf(stderr, "unknown criterion '%s' (see --list)\n", s.c_str());
      return 2;
    }
  }

  int failed = 0;
  for (const auto& c : criteria()) {
    if (!selected.empty() && std::find(selected.begin(), selected.end(), c.name) == selected.end()) continue;
    Outcome out;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(out, ctx);
    } catch (const std::exception& e) {
      out.check(false, std::string("unexpected exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.check(secs < c.budget_s, fmt("runtime %.1f s < %.0f s", secs, c.budget_s));
    if (verbose || !out.pass) {
      for (const auto& n : out.notes) std::printf("%s\n", n.c_str());
    }
    std::printf("%s %-10s %s (%.1f s)\n", out.pass ? "PASS" : "FAIL", c.name.c_str(), c.title.c_str(), secs);
    std::fflush(stdout);
    if (!out.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
