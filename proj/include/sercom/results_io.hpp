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

// Result files.
//
// records.csv — header line, then one row per TrialRecord:
//
//   sweep_value,estimator,seed,iterations,wall_time_s,failed,doa_err_deg,power_err
//
//   sweep_value   float, the swept quantity (dB, snapshots, degrees or ρ)
//   estimator     SERCOM(JBLD) | SERCOM(AIRM) | SERCOM(LE) | SPICE | SAMV | ESPRIT
//   seed          uint64 simulation seed of the trial
//   iterations    optimizer iterations (0 for ESPRIT and failed runs)
//   wall_time_s   seconds spent in the estimator
//   failed        0 or 1
//   doa_err_deg   ';'-separated estimate − truth per source, degrees (empty if failed)
//   power_err     ';'-separated estimate − truth per source, linear power (empty if failed)
//
// Floats are written with 17 significant digits, so values survive a round trip.
//
// summary.json — {"experiment", "sweep_variable", "cells": [...], "crb": [...]}; each
// cell carries the CellSummary fields (wall_time_s as {min,p25,median,p75,max}),
// each crb entry {sweep_value, per_source_deg, rmse_deg, degenerate}. NaN is
// written as null.

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "sercom/harness.hpp"

namespace sercom {

inline constexpr const char* kRecordsHeader =
    "sweep_value,estimator,seed,iterations,wall_time_s,failed,doa_err_deg,power_err";

std::string records_to_csv(const std::vector<TrialRecord>& records);
/// ConfigError with the line number on malformed rows.
std::vector<TrialRecord> records_from_csv(const std::string& text);

std::string summary_to_json(const MetricsSummary& summary);
MetricsSummary summary_from_json(const std::string& text);

/// Writes records.csv and summary.json into `dir` (created if missing). IoError with the path.
void export_results(const std::vector<TrialRecord>& records, const MetricsSummary& summary,
                    const std::filesystem::path& dir);

std::vector<TrialRecord> import_records(const std::filesystem::path& path);
MetricsSummary import_summary(const std::filesystem::path& path);

}  // namespace sercom
