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

#include "sercom/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <utility>

namespace sercom {

namespace {

constexpr std::size_t kMaxExhaustiveSources = 6;

template <typename Field>
double rmse_of(const std::vector<TrialRecord>& records, Field field, const char* what) {
  double acc = 0.0;
  std::size_t count = 0;
  for (const auto& r : records) {
    if (r.failed) continue;
    for (double e : r.*field) {
      acc += e * e;
      ++count;
    }
  }
  if (count == 0) throw DomainError(std::string(what) + ": no successful records");
  return std::sqrt(acc / static_cast<double>(count));
}

}  // namespace

Assignment match_peaks_to_truth(const std::vector<double>& peak_doas_deg, const std::vector<double>& truth_deg) {
  const std::size_t k = truth_deg.size();
  if (peak_doas_deg.size() != k) {
    throw ShapeError("pairing needs as many peaks as sources (" + std::to_string(peak_doas_deg.size()) + " vs " +
                     std::to_string(k) + ")");
  }
  if (k > kMaxExhaustiveSources) {
    throw UnsupportedError("exhaustive pairing supports at most 6 sources, got " + std::to_string(k));
  }
  Assignment perm(k);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  Assignment best = perm;
  double best_cost = std::numeric_limits<double>::infinity();
  do {
    double cost = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      const double e = peak_doas_deg[perm[i]] - truth_deg[i];
      cost += e * e;
    }
    if (cost < best_cost) {
      best_cost = cost;
      best = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

double rmse_doa(const std::vector<TrialRecord>& records) {
  return rmse_of(records, &TrialRecord::doa_err_deg, "rmse_doa");
}

double rmse_power(const std::vector<TrialRecord>& records) {
  return rmse_of(records, &TrialRecord::power_err, "rmse_power");
}

double quantile(std::vector<double> values, double q) {
  if (values.empty()) throw DomainError("quantile of an empty sample");
  if (!(q >= 0.0 && q <= 1.0)) throw DomainError("quantile level must lie in [0, 1]");
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return values[lo] + frac * (values[hi] - values[lo]);
}

BoxStats box_stats(const std::vector<double>& values) {
  return {quantile(values, 0.0), quantile(values, 0.25), quantile(values, 0.5), quantile(values, 0.75),
          quantile(values, 1.0)};
}

double trial_rms(const std::vector<double>& errors) {
  if (errors.empty()) return 0.0;
  double acc = 0.0;
  for (double e : errors) acc += e * e;
  return std::sqrt(acc / static_cast<double>(errors.size()));
}

const CellSummary& MetricsSummary::cell(const std::string& estimator, double sweep_value) const {
  for (const auto& c : cells) {
    if (c.estimator == estimator && c.sweep_value == sweep_value) return c;
  }
  throw DomainError("no summary cell for " + estimator + " at " + std::to_string(sweep_value));
}

std::vector<CellSummary> summarize(const std::vector<TrialRecord>& records) {
  std::vector<std::pair<std::string, double>> keys;
  std::vector<std::vector<const TrialRecord*>> groups;
  for (const auto& r : records) {
    const auto key = std::make_pair(r.estimator, r.sweep_value);
    auto it = std::find(keys.begin(), keys.end(), key);
    if (it == keys.end()) {
      keys.push_back(key);
      groups.emplace_back();
      it = keys.end() - 1;
    }
    groups[static_cast<std::size_t>(it - keys.begin())].push_back(&r);
  }

  std::vector<CellSummary> cells;
  for (std::size_t g = 0; g < keys.size(); ++g) {
    CellSummary c;
    c.estimator = keys[g].first;
    c.sweep_value = keys[g].second;
    std::vector<TrialRecord> ok;
    std::vector<double> doa_rms;
    std::vector<double> power_rms;
    std::vector<double> times;
    double iterations = 0.0;
    for (const TrialRecord* r : groups[g]) {
      ++c.trials;
      if (r->failed) {
        ++c.failures;
        continue;
      }
      ok.push_back(*r);
      doa_rms.push_back(trial_rms(r->doa_err_deg));
      power_rms.push_back(trial_rms(r->power_err));
      times.push_back(r->wall_time_s);
      iterations += r->iterations;
    }
    if (!ok.empty()) {
      c.rmse_doa_deg = rmse_doa(ok);
      c.rmse_power = rmse_power(ok);
      c.doa_p25 = quantile(doa_rms, 0.25);
      c.doa_p75 = quantile(doa_rms, 0.75);
      c.power_p25 = quantile(power_rms, 0.25);
      c.power_p75 = quantile(power_rms, 0.75);
      c.mean_iterations = iterations / static_cast<double>(ok.size());
      c.mean_wall_time_s = std::accumulate(times.begin(), times.end(), 0.0) / static_cast<double>(times.size());
      c.wall_time_s = box_stats(times);
    } else {
      const double nan = std::numeric_limits<double>::quiet_NaN();
      c.rmse_doa_deg = c.rmse_power = c.doa_p25 = c.doa_p75 = c.power_p25 = c.power_p75 = nan;
      c.mean_iterations = c.mean_wall_time_s = nan;
      c.wall_time_s = {nan, nan, nan, nan, nan};
    }
    cells.push_back(std::move(c));
  }
  return cells;
}

}  // namespace sercom
