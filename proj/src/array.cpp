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

#include "sercom/array.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "sercom/rng.hpp"

namespace sercom {

namespace {

constexpr double kPi = std::numbers::pi;

double deg_to_rad(double deg) { return deg * kPi / 180.0; }

}  // namespace

ArrayGeometry::ArrayGeometry(ArrayKind kind, std::vector<Eigen::Vector2d> positions, double spacing,
                             double radius)
    : kind_(kind), positions_(std::move(positions)), spacing_(spacing), radius_(radius) {
  if (positions_.empty()) throw DomainError("ArrayGeometry: at least one sensor is required");
  for (const auto& p : positions_) {
    if (!p.allFinite()) throw DomainError("ArrayGeometry: non-finite sensor position");
  }
}

ArrayGeometry ArrayGeometry::ula(Index num_sensors, double spacing_wavelengths) {
  if (num_sensors < 1) throw DomainError("ULA: need at least one sensor");
  if (!(spacing_wavelengths > 0.0)) throw DomainError("ULA: spacing must be positive");
  std::vector<Eigen::Vector2d> pos;
  pos.reserve(static_cast<std::size_t>(num_sensors));
  for (Index m = 0; m < num_sensors; ++m) {
    pos.emplace_back(spacing_wavelengths * static_cast<double>(m), 0.0);
  }
  return ArrayGeometry(ArrayKind::ULA, std::move(pos), spacing_wavelengths, 0.0);
}

ArrayGeometry ArrayGeometry::semicircular_uca(Index num_sensors) {
  if (num_sensors < 1) throw DomainError("UCA: need at least one sensor");
  if (num_sensors == 1) {
    return ArrayGeometry(ArrayKind::UCA, {Eigen::Vector2d::Zero()}, 0.0, 0.0);
  }
  const double step = kPi / static_cast<double>(num_sensors - 1);
  // Arc length r·step between neighbours equals half a wavelength.
  const double radius = 0.5 / step;
  std::vector<Eigen::Vector2d> pos;
  pos.reserve(static_cast<std::size_t>(num_sensors));
  for (Index m = 0; m < num_sensors; ++m) {
    const double ang = step * static_cast<double>(m);
    pos.emplace_back(radius * std::cos(ang), radius * std::sin(ang));
  }
  return ArrayGeometry(ArrayKind::UCA, std::move(pos), 0.0, radius);
}

ArrayGeometry ArrayGeometry::custom(std::vector<Eigen::Vector2d> positions) {
  return ArrayGeometry(ArrayKind::Custom, std::move(positions), 0.0, 0.0);
}

ArrayGeometry ArrayGeometry::parse(const std::string& spec) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  for (std::string tok; std::getline(ss, tok, ':');) parts.push_back(tok);
  auto fail = [&]() -> ArrayGeometry {
    throw ConfigError("bad geometry '" + spec + "' (expected ula:M[:spacing] or uca:M)");
  };
  if (parts.size() < 2) return fail();
  try {
    std::size_t used = 0;
    const long m = std::stol(parts[1], &used);
    if (used != parts[1].size() || m < 1) return fail();
    if (parts[0] == "ula" && parts.size() <= 3) {
      double spacing = 0.5;
      if (parts.size() == 3) spacing = std::stod(parts[2]);
      return ula(m, spacing);
    }
    if (parts[0] == "uca" && parts.size() == 2) return semicircular_uca(m);
  } catch (const std::logic_error&) {
    return fail();
  }
  return fail();
}

std::string ArrayGeometry::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case ArrayKind::ULA:
      os << "ula:" << size() << ':' << spacing_;
      break;
    case ArrayKind::UCA:
      os << "uca:" << size();
      break;
    case ArrayKind::Custom:
      os << "custom:" << size();
      break;
  }
  return os.str();
}

AngularGrid::AngularGrid(std::vector<double> degrees) : degrees_(std::move(degrees)) {
  if (degrees_.empty()) throw DomainError("AngularGrid: empty grid");
  for (std::size_t i = 0; i < degrees_.size(); ++i) {
    const double d = degrees_[i];
    if (!std::isfinite(d) || d < 0.0 || d > 180.0) {
      throw DomainError("AngularGrid: directions must lie in [0, 180] degrees");
    }
    if (i > 0 && !(d > degrees_[i - 1])) throw DomainError("AngularGrid: directions must be strictly ascending");
  }
}

AngularGrid AngularGrid::from_range(double start_deg, double stop_deg, double step_deg) {
  if (!(step_deg > 0.0) || stop_deg < start_deg) throw DomainError("AngularGrid: bad range");
  const auto count = static_cast<std::size_t>(std::floor((stop_deg - start_deg) / step_deg + 1e-9)) + 1;
  std::vector<double> deg(count);
  for (std::size_t i = 0; i < count; ++i) deg[i] = start_deg + step_deg * static_cast<double>(i);
  return AngularGrid(std::move(deg));
}

AngularGrid AngularGrid::standard() { return from_range(0.0, 180.0, 0.5); }

void SourceScene::validate() const {
  if (directions_deg.size() != powers_linear.size()) {
    throw DomainError("SourceScene: directions and powers differ in length");
  }
  for (double p : powers_linear) {
    if (!(p > 0.0) || !std::isfinite(p)) throw DomainError("SourceScene: source powers must be positive");
  }
  for (double d : directions_deg) {
    if (!std::isfinite(d)) throw DomainError("SourceScene: non-finite direction");
  }
  if (!(noise_power > 0.0) || !std::isfinite(noise_power)) {
    throw DomainError("SourceScene: noise power must be positive");
  }
  if (!(std::abs(correlation_rho) <= 1.0)) throw DomainError("SourceScene: |rho| must not exceed 1");
  if (correlation_rho != 0.0 && num_sources() != 2) {
    throw UnsupportedError("SourceScene: correlated sources are only defined for K = 2");
  }
}

Eigen::MatrixXd source_covariance(const SourceScene& scene) {
  scene.validate();
  const auto k = static_cast<Index>(scene.num_sources());
  Eigen::MatrixXd sigma = Eigen::MatrixXd::Zero(k, k);
  for (Index i = 0; i < k; ++i) sigma(i, i) = scene.powers_linear[static_cast<std::size_t>(i)];
  if (k == 2) {
    const double off = scene.correlation_rho * std::sqrt(sigma(0, 0) * sigma(1, 1));
    sigma(0, 1) = off;
    sigma(1, 0) = off;
  }
  return sigma;
}

CVector steering_vector(const ArrayGeometry& geom, double theta_deg) {
  const double th = deg_to_rad(theta_deg);
  const Eigen::Vector2d u(std::cos(th), std::sin(th));
  CVector a(geom.size());
  for (Index m = 0; m < geom.size(); ++m) {
    a(m) = std::polar(1.0, 2.0 * kPi * geom.positions()[static_cast<std::size_t>(m)].dot(u));
  }
  return a;
}

CMatrix steering_matrix(const ArrayGeometry& geom, const std::vector<double>& directions_deg) {
  CMatrix a(geom.size(), static_cast<Index>(directions_deg.size()));
  for (std::size_t d = 0; d < directions_deg.size(); ++d) {
    a.col(static_cast<Index>(d)) = steering_vector(geom, directions_deg[d]);
  }
  return a;
}

CMatrix steering_matrix(const ArrayGeometry& geom, const AngularGrid& grid) {
  return steering_matrix(geom, grid.degrees());
}

HermitianMatrix model_covariance(const PowerSpectrum& spectrum, const CMatrix& steering) {
  if (!(spectrum.noise_power > 0.0)) throw DomainError("model_covariance: noise power must be positive");
  if (steering.cols() != spectrum.p.size()) throw ShapeError("model_covariance: steering/spectrum size mismatch");
  if (spectrum.p.size() > 0 && spectrum.p.minCoeff() < 0.0) {
    throw DomainError("model_covariance: grid powers must be nonnegative");
  }
  CMatrix r = steering * spectrum.p.cast<cdouble>().asDiagonal() * steering.adjoint();
  r.diagonal().array() += spectrum.noise_power;
  return HermitianMatrix::from_matrix(symmetrize(r));
}

HermitianMatrix population_covariance(const SourceScene& scene, const ArrayGeometry& geom) {
  const Eigen::MatrixXd sigma = source_covariance(scene);
  const Index m = geom.size();
  CMatrix r = CMatrix::Zero(m, m);
  if (scene.num_sources() > 0) {
    const CMatrix a = steering_matrix(geom, scene.directions_deg);
    r = a * sigma.cast<cdouble>() * a.adjoint();
  }
  r.diagonal().array() += scene.noise_power;
  return HermitianMatrix::from_matrix(symmetrize(r));
}

SnapshotSet simulate_snapshots(const SourceScene& scene, const ArrayGeometry& geom, Index n,
                               std::uint64_t seed) {
  if (n < 1) throw DomainError("simulate_snapshots: need at least one snapshot");
  scene.validate();
  const auto k = static_cast<Index>(scene.num_sources());
  const Index m = geom.size();

  // Lower-triangular factor F with F F^T = Σ. Written out for K = 2 so that
  // ρ = 1 yields the rank-one factor instead of a failed Cholesky.
  Eigen::MatrixXd factor = Eigen::MatrixXd::Zero(k, k);
  for (Index i = 0; i < k; ++i) factor(i, i) = std::sqrt(scene.powers_linear[static_cast<std::size_t>(i)]);
  if (k == 2 && scene.correlation_rho != 0.0) {
    const double s2 = factor(1, 1);
    const double rho = scene.correlation_rho;
    factor(1, 0) = rho * s2;
    factor(1, 1) = s2 * std::sqrt(std::max(0.0, 1.0 - rho * rho));
  }

  Rng rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double half = std::sqrt(0.5);
  const double noise_scale = std::sqrt(scene.noise_power) * half;

  const CMatrix a = k > 0 ? steering_matrix(geom, scene.directions_deg) : CMatrix(m, 0);
  CMatrix source_draws(k, n);
  CMatrix noise(m, n);
  for (Index t = 0; t < n; ++t) {
    for (Index i = 0; i < k; ++i) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      source_draws(i, t) = cdouble(re, im) * half;
    }
    for (Index i = 0; i < m; ++i) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      noise(i, t) = cdouble(re, im) * noise_scale;
    }
  }
  SnapshotSet out;
  out.data = noise;
  if (k > 0) out.data += a * (factor.cast<cdouble>() * source_draws);
  return out;
}

HermitianMatrix sample_covariance(const SnapshotSet& snapshots) {
  const Index n = snapshots.num_snapshots();
  if (n < 1 || snapshots.num_sensors() < 1) throw DomainError("sample_covariance: empty snapshot set");
  if (!snapshots.data.allFinite()) throw DomainError("sample_covariance: non-finite snapshot entry");
  CMatrix r = snapshots.data * snapshots.data.adjoint() / static_cast<double>(n);
  return HermitianMatrix::from_matrix(symmetrize(r));
}

double snr_db(const SourceScene& scene) {
  if (scene.powers_linear.empty()) throw DomainError("snr_db: scene has no sources");
  if (!(scene.noise_power > 0.0)) throw DomainError("snr_db: noise power must be positive");
  const double top = *std::max_element(scene.powers_linear.begin(), scene.powers_linear.end());
  return 10.0 * std::log10(top / scene.noise_power);
}

double noise_power_for_snr(const SourceScene& scene, double snr) {
  if (scene.powers_linear.empty()) throw DomainError("noise_power_for_snr: scene has no sources");
  const double top = *std::max_element(scene.powers_linear.begin(), scene.powers_linear.end());
  return top / db_to_linear(snr);
}

}  // namespace sercom
