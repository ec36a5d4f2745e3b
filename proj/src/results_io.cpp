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

#include "sercom/results_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace sercom {

using nlohmann::json;

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string join(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ';';
    out += fmt(values[i]);
  }
  return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

double parse_double(const std::string& s, std::size_t line) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::logic_error&) {
    throw ConfigError("records line " + std::to_string(line) + ": '" + s + "' is not a number");
  }
}

std::vector<double> parse_list(const std::string& s, std::size_t line) {
  std::vector<double> out;
  if (s.empty()) return out;
  for (const auto& item : split(s, ';')) out.push_back(parse_double(item, line));
  return out;
}

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

double read_number(const json& j, const char* key) {
  if (!j.contains(key)) throw ConfigError(std::string("summary: missing field '") + key + "'");
  const json& v = j.at(key);
  if (v.is_null()) return std::numeric_limits<double>::quiet_NaN();
  if (!v.is_number()) throw ConfigError(std::string("summary: field '") + key + "' is not a number");
  return v.get<double>();
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError(path.string() + ": cannot open for reading");
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError(path.string() + ": cannot open for writing");
  os << text;
  if (!os) throw IoError(path.string() + ": write failed");
}

}  // namespace

std::string records_to_csv(const std::vector<TrialRecord>& records) {
  std::string out = std::string(kRecordsHeader) + "\n";
  for (const auto& r : records) {
    if (r.estimator.find_first_of(",\"\n") != std::string::npos) {
      throw ConfigError("estimator name '" + r.estimator + "' cannot be written to CSV");
    }
    out += fmt(r.sweep_value) + ',' + r.estimator + ',' + std::to_string(r.seed) + ',' +
           std::to_string(r.iterations) + ',' + fmt(r.wall_time_s) + ',' + (r.failed ? "1" : "0") + ',' +
           join(r.doa_err_deg) + ',' + join(r.power_err) + '\n';
  }
  return out;
}

std::vector<TrialRecord> records_from_csv(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line) || line != kRecordsHeader) {
    throw ConfigError("records: first line must be the header '" + std::string(kRecordsHeader) + "'");
  }
  std::vector<TrialRecord> out;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 8) {
      throw ConfigError("records line " + std::to_string(lineno) + ": expected 8 fields, got " +
                        std::to_string(f.size()));
    }
    TrialRecord r;
    r.sweep_value = parse_double(f[0], lineno);
    r.estimator = f[1];
    try {
      std::size_t used = 0;
      r.seed = std::stoull(f[2], &used);
      if (used != f[2].size()) throw std::invalid_argument(f[2]);
      r.iterations = std::stoi(f[3], &used);
      if (used != f[3].size()) throw std::invalid_argument(f[3]);
    } catch (const std::logic_error&) {
      throw ConfigError("records line " + std::to_string(lineno) + ": bad seed or iteration count");
    }
    r.wall_time_s = parse_double(f[4], lineno);
    if (f[5] != "0" && f[5] != "1") throw ConfigError("records line " + std::to_string(lineno) + ": failed must be 0/1");
    r.failed = f[5] == "1";
    r.doa_err_deg = parse_list(f[6], lineno);
    r.power_err = parse_list(f[7], lineno);
    out.push_back(std::move(r));
  }
  return out;
}

std::string summary_to_json(const MetricsSummary& summary) {
  json cells = json::array();
  for (const auto& c : summary.cells) {
    cells.push_back({
        {"estimator", c.estimator},
        {"sweep_value", number(c.sweep_value)},
        {"trials", c.trials},
        {"failures", c.failures},
        {"rmse_doa_deg", number(c.rmse_doa_deg)},
        {"rmse_power", number(c.rmse_power)},
        {"doa_p25", number(c.doa_p25)},
        {"doa_p75", number(c.doa_p75)},
        {"power_p25", number(c.power_p25)},
        {"power_p75", number(c.power_p75)},
        {"mean_iterations", number(c.mean_iterations)},
        {"mean_wall_time_s", number(c.mean_wall_time_s)},
        {"wall_time_s",
         {{"min", number(c.wall_time_s.min)},
          {"p25", number(c.wall_time_s.p25)},
          {"median", number(c.wall_time_s.median)},
          {"p75", number(c.wall_time_s.p75)},
          {"max", number(c.wall_time_s.max)}}},
    });
  }
  json crb = json::array();
  for (const auto& p : summary.crb) {
    crb.push_back({{"sweep_value", number(p.sweep_value)},
                   {"per_source_deg", p.per_source_deg},
                   {"rmse_deg", number(p.rmse_deg)},
                   {"degenerate", p.degenerate}});
  }
  const json j = {{"experiment", summary.experiment},
                  {"sweep_variable", summary.sweep_variable},
                  {"cells", cells},
                  {"crb", crb}};
  return j.dump(2) + "\n";
}

MetricsSummary summary_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("summary is not valid JSON: ") + e.what());
  }
  MetricsSummary s;
  try {
    s.experiment = j.at("experiment").get<std::string>();
    s.sweep_variable = j.at("sweep_variable").get<std::string>();
    for (const auto& c : j.at("cells")) {
      CellSummary cell;
      cell.estimator = c.at("estimator").get<std::string>();
      cell.sweep_value = read_number(c, "sweep_value");
      cell.trials = c.at("trials").get<std::size_t>();
      cell.failures = c.at("failures").get<std::size_t>();
      cell.rmse_doa_deg = read_number(c, "rmse_doa_deg");
      cell.rmse_power = read_number(c, "rmse_power");
      cell.doa_p25 = read_number(c, "doa_p25");
      cell.doa_p75 = read_number(c, "doa_p75");
      cell.power_p25 = read_number(c, "power_p25");
      cell.power_p75 = read_number(c, "power_p75");
      cell.mean_iterations = read_number(c, "mean_iterations");
      cell.mean_wall_time_s = read_number(c, "mean_wall_time_s");
      const json& w = c.at("wall_time_s");
      cell.wall_time_s = {read_number(w, "min"), read_number(w, "p25"), read_number(w, "median"),
                          read_number(w, "p75"), read_number(w, "max")};
      s.cells.push_back(std::move(cell));
    }
    for (const auto& p : j.at("crb")) {
      CrbPoint pt;
      pt.sweep_value = read_number(p, "sweep_value");
      pt.per_source_deg = p.at("per_source_deg").get<std::vector<double>>();
      pt.rmse_deg = read_number(p, "rmse_deg");
      pt.degenerate = p.at("degenerate").get<bool>();
      s.crb.push_back(std::move(pt));
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("summary: ") + e.what());
  }
  return s;
}

void export_results(const std::vector<TrialRecord>& records, const MetricsSummary& summary,
                    const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError(dir.string() + ": cannot create directory (" + ec.message() + ")");
  write_file(dir / "records.csv", records_to_csv(records));
  write_file(dir / "summary.json", summary_to_json(summary));
}

std::vector<TrialRecord> import_records(const std::filesystem::path& path) {
  try {
    return records_from_csv(read_file(path));
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

MetricsSummary import_summary(const std::filesystem::path& path) {
  try {
    return summary_from_json(read_file(path));
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

}  // namespace sercom
