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

// Monte Carlo experiment configuration and the sweep runner.
//
// Config files are JSON objects:
//
//   {
//     "name": "snr_sweep",
//     "description": "free text",
//     "geometry": "ula:12" | "ula:12:0.5" | "uca:14",
//     "grid": {"start": 0, "stop": 180, "step": 0.5},
//     "scene": {
//       "directions_deg": [35, 43, 51],
//       "powers_db": [0, 0, -5],
//       "rho": 0,              // optional, K = 2 only
//       "snr_db": -1.5         // or "noise_power": 0.7; exactly one
//     },
//     "sweep": {"variable": "snr_db" | "n_snapshots" | "delta_theta_deg" | "rho",
//               "values": [...]},
//     "n_snapshots": 50,
//     "trials": 100,
//     "full_trials": 500,     // informational
//     "seed": 1,
//     "estimators": ["SERCOM(JBLD)", "SERCOM(AIRM)", "SERCOM(LE)", "SPICE", "SAMV", "ESPRIT"],
//     "num_peaks": 3,          // optional; must equal the number of sources
//     "maxiter": 5000,         // optional
//     "eps_p": 1e-4            // optional
//   }
//
// delta_theta_deg shifts every source direction by the sweep value.

#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sercom/harness.hpp"

namespace sercom {

enum class Method { SercomJbld, SercomAirm, SercomLe, Spice, Samv, Esprit };

/// "SERCOM(JBLD)", "SERCOM(AIRM)", "SERCOM(LE)", "SPICE", "SAMV", "ESPRIT".
std::string_view to_string(Method method);
/// Accepts the display names and the short forms jbld/airm/le/spice/samv/esprit,
/// case-insensitively. ConfigError otherwise.
Method parse_method(std::string_view name);

enum class SweepVariable { SnrDb, Snapshots, DeltaTheta, Rho };

std::string_view to_string(SweepVariable v);
SweepVariable parse_sweep_variable(std::string_view name);

struct GridSpec {
  double start_deg = 0.0;
  double stop_deg = 180.0;
  double step_deg = 0.5;

  AngularGrid build() const { return AngularGrid::from_range(start_deg, stop_deg, step_deg); }
};

struct SceneTemplate {
  std::vector<double> directions_deg;
  std::vector<double> powers_db;
  double rho = 0.0;
  std::optional<double> snr_db;
  std::optional<double> noise_power;
};

struct ExperimentConfig {
  std::string name;
  std::string description;
  std::string geometry = "ula:12";
  GridSpec grid;
  SceneTemplate scene;
  SweepVariable sweep_variable = SweepVariable::SnrDb;
  std::vector<double> sweep_values;
  Index n_snapshots = 50;
  std::size_t trials = 100;
  std::size_t full_trials = 500;  ///< trial count for full-length reproduction runs (informational)
  std::uint64_t seed = 1;
  std::vector<Method> estimators;
  int maxiter = 5000;
  double eps_p = 1e-4;

  /// ConfigError describing the first problem found.
  void validate() const;

  std::size_t num_sources() const { return scene.directions_deg.size(); }
  /// Scene (directions, linear powers, ρ, σ_n²) at one sweep value.
  SourceScene scene_at(double sweep_value) const;
  Index snapshots_at(double sweep_value) const;

  std::string to_json() const;
  /// Parses and validates. ConfigError on malformed input.
  static ExperimentConfig from_json(const std::string& text);
};

ExperimentConfig load_experiment_config(const std::filesystem::path& path);

/// Built-in presets for the six experiments (runtime has two array sizes).
std::vector<std::string> preset_names();
/// ConfigError for an unknown name.
ExperimentConfig preset(const std::string& name);

/// Per-trial seed; pure in (base, trial). The same trial index reuses its
/// seed at every sweep value (common random numbers across the sweep).
std::uint64_t trial_seed(std::uint64_t base, std::size_t trial);

struct SweepOptions {
  unsigned threads = 0;  ///< 0 → hardware concurrency
  bool warm_up = true;   ///< one discarded run per estimator before timing
  /// Called after each completed (sweep value, trial) task with (done, total).
  std::function<void(std::size_t, std::size_t)> progress;
};

struct SweepResult {
  std::vector<TrialRecord> records;  ///< sweep value, then trial, then estimator order
  MetricsSummary summary;
};

/// Runs one estimator on one sample covariance and scores it against the scene.
/// Never throws for estimator failures: they come back as a failed record.
TrialRecord run_trial(Method method, const HermitianMatrix& sample, const SourceScene& scene,
                      const ArrayGeometry& geom, const SteeringGrid& grid, const ExperimentConfig& cfg,
                      double sweep_value, std::uint64_t seed);

SweepResult run_sweep(const ExperimentConfig& cfg, const SweepOptions& options = {});

/// Summary (cells + CRB) recomputed from records for a config.
MetricsSummary build_summary(const ExperimentConfig& cfg, const std::vector<TrialRecord>& records);

}  // namespace sercom
