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

// Array geometry, the on-grid covariance model and the snapshot simulator.
//
// Conventions: sensor positions are in carrier wavelengths, directions are in
// degrees measured from the x axis (the ULA axis, broadside at 90°), and the
// steering phase is exp(+j 2π <position, (cos θ, sin θ)>).

#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "sercom/hermitian.hpp"

namespace sercom {

enum class ArrayKind { ULA, UCA, Custom };

class ArrayGeometry {
 public:
  /// Uniform linear array along x: positions (spacing·m, 0), m = 0..M−1.
  static ArrayGeometry ula(Index num_sensors, double spacing_wavelengths = 0.5);
  /// M sensors on the upper half circle (angles π m/(M−1)), radius chosen so
  /// the arc between neighbours is half a wavelength. M = 1 puts one sensor at the origin.
  static ArrayGeometry semicircular_uca(Index num_sensors);
  static ArrayGeometry custom(std::vector<Eigen::Vector2d> positions);

  /// Parses "ula:M[:spacing]", "uca:M". Throws ConfigError.
  static ArrayGeometry parse(const std::string& spec);
  std::string describe() const;

  Index size() const { return static_cast<Index>(positions_.size()); }
  ArrayKind kind() const { return kind_; }
  /// Inter-element spacing for ULA; 0 otherwise.
  double spacing() const { return spacing_; }
  double radius() const { return radius_; }
  const std::vector<Eigen::Vector2d>& positions() const { return positions_; }

 private:
  ArrayGeometry(ArrayKind kind, std::vector<Eigen::Vector2d> positions, double spacing, double radius);

  ArrayKind kind_;
  std::vector<Eigen::Vector2d> positions_;
  double spacing_ = 0.0;
  double radius_ = 0.0;
};

/// Strictly ascending direction grid in degrees within [0, 180].
class AngularGrid {
 public:
  explicit AngularGrid(std::vector<double> degrees);
  /// start, start+step, ... up to stop inclusive (stop is hit when it lies on the lattice).
  static AngularGrid from_range(double start_deg, double stop_deg, double step_deg);
  /// 0°..180° every 0.5°, D = 361.
  static AngularGrid standard();

  Index size() const { return static_cast<Index>(degrees_.size()); }
  const std::vector<double>& degrees() const { return degrees_; }
  double operator[](Index d) const { return degrees_[static_cast<std::size_t>(d)]; }

 private:
  std::vector<double> degrees_;
};

/// Far-field narrowband sources plus white noise.
struct SourceScene {
  std::vector<double> directions_deg;
  std::vector<double> powers_linear;
  double correlation_rho = 0.0;  ///< pairwise coefficient; only K = 2 may use ρ ≠ 0
  double noise_power = 1.0;

  std::size_t num_sources() const { return directions_deg.size(); }
  /// Throws DomainError/UnsupportedError on inconsistent fields.
  void validate() const;
};

/// Real K×K source covariance with off-diagonal ρ σ₁σ₂ (K = 2).
Eigen::MatrixXd source_covariance(const SourceScene& scene);

/// Complex M×N data; column t is the snapshot y(t).
struct SnapshotSet {
  CMatrix data;

  Index num_sensors() const { return data.rows(); }
  Index num_snapshots() const { return data.cols(); }
};

/// Nonnegative grid powers and the (known) noise power.
struct PowerSpectrum {
  AngularGrid grid;
  RVector p;
  double noise_power = 0.0;
};

CVector steering_vector(const ArrayGeometry& geom, double theta_deg);
/// Column d is steering_vector(geom, grid[d]).
CMatrix steering_matrix(const ArrayGeometry& geom, const AngularGrid& grid);
/// Steering matrix for arbitrary directions.
CMatrix steering_matrix(const ArrayGeometry& geom, const std::vector<double>& directions_deg);

/// A diag(p) A^H + σ_n² I. DomainError for σ_n² ≤ 0, negative p or size mismatch.
HermitianMatrix model_covariance(const PowerSpectrum& spectrum, const CMatrix& steering);

/// A_φ Σ A_φ^H + σ_n² I for the scene's true directions.
HermitianMatrix population_covariance(const SourceScene& scene, const ArrayGeometry& geom);

/// y(t) = A_φ s(t) + n(t) with circular complex Gaussian sources and noise.
/// Deterministic for a fixed seed. Throws DomainError for n < 1.
SnapshotSet simulate_snapshots(const SourceScene& scene, const ArrayGeometry& geom, Index n,
                               std::uint64_t seed);

/// (1/N) Σ y(t) y(t)^H.
HermitianMatrix sample_covariance(const SnapshotSet& snapshots);

/// 10 log₁₀(max σ_k² / σ_n²). DomainError for K = 0.
double snr_db(const SourceScene& scene);

/// Noise power that realizes `snr` dB for the scene's strongest source.
double noise_power_for_snr(const SourceScene& scene, double snr);

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

}  // namespace sercom
