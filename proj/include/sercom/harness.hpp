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

// Monte Carlo bookkeeping: peak-to-truth pairing, per-trial records and the
// aggregated error metrics.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sercom/estimators.hpp"

namespace sercom {

/// assignment[k] is the index into the peak list paired with truth source k.
using Assignment = std::vector<std::size_t>;

/// Pairing that minimizes the total squared angular error, by exhaustive
/// search (ties go to the first permutation in lexicographic order).
/// ShapeError when the sizes differ, UnsupportedError for K > 6.
Assignment match_peaks_to_truth(const std::vector<double>& peak_doas_deg, const std::vector<double>& truth_deg);

/// One estimator on one trial at one sweep point.
struct TrialRecord {
  double sweep_value = 0.0;
  std::string estimator;
  std::uint64_t seed = 0;
  int iterations = 0;
  double wall_time_s = 0.0;
  bool failed = false;
  std::vector<double> doa_err_deg;  ///< estimate − truth per source, truth order
  std::vector<double> power_err;    ///< estimate − truth per source, linear units

  bool operator==(const TrialRecord&) const = default;
};

/// sqrt(mean of squared per-source errors) over the non-failed records.
/// DomainError if no non-failed record carries errors.
double rmse_doa(const std::vector<TrialRecord>& records);
double rmse_power(const std::vector<TrialRecord>& records);

/// Linear-interpolation quantile (numpy's default), q ∈ [0, 1].
/// DomainError for an empty sample or q outside [0, 1].
double quantile(std::vector<double> values, double q);

struct BoxStats {
  double min = 0.0;
  double p25 = 0.0;
  double median = 0.0;
  double p75 = 0.0;
  double max = 0.0;
};

BoxStats box_stats(const std::vector<double>& values);

/// Aggregates for one (estimator, sweep value) cell.
struct CellSummary {
  std::string estimator;
  double sweep_value = 0.0;
  std::size_t trials = 0;
  std::size_t failures = 0;
  double rmse_doa_deg = 0.0;
  double rmse_power = 0.0;
  /// Quartiles of the per-trial root-mean-square errors.
  double doa_p25 = 0.0;
  double doa_p75 = 0.0;
  double power_p25 = 0.0;
  double power_p75 = 0.0;
  double mean_iterations = 0.0;
  double mean_wall_time_s = 0.0;
  BoxStats wall_time_s;
};

/// Reference bound at one sweep value (empty per_source when the bound is degenerate).
struct CrbPoint {
  double sweep_value = 0.0;
  std::vector<double> per_source_deg;
  /// sqrt(mean of squared per-source bounds); comparable with rmse_doa_deg.
  double rmse_deg = 0.0;
  bool degenerate = false;
};

struct MetricsSummary {
  std::string experiment;
  std::string sweep_variable;
  std::vector<CellSummary> cells;  ///< estimator-major, sweep values in config order
  std::vector<CrbPoint> crb;

  /// Cell lookup; DomainError when absent.
  const CellSummary& cell(const std::string& estimator, double sweep_value) const;
};

/// Root-mean-square of one record's errors (doa or power), the per-trial
/// quantity whose quartiles form the summary bands.
double trial_rms(const std::vector<double>& errors);

/// Groups records by (estimator, sweep value) in first-appearance order and aggregates.
std::vector<CellSummary> summarize(const std::vector<TrialRecord>& records);

}  // namespace sercom
