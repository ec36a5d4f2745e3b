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

#include "sercom/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "sercom/baselines.hpp"
#include "sercom/rng.hpp"

namespace sercom {

using nlohmann::json;

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

constexpr Method kAllMethods[] = {Method::SercomJbld, Method::SercomAirm, Method::SercomLe,
                                  Method::Spice,      Method::Samv,       Method::Esprit};

const std::vector<Method> kGridMethods = {Method::SercomJbld, Method::SercomAirm, Method::SercomLe, Method::Spice,
                                          Method::Samv};
const std::vector<Method> kGridAndEsprit = {Method::SercomJbld, Method::SercomAirm, Method::SercomLe,
                                            Method::Spice,      Method::Samv,       Method::Esprit};

EstimateResult run_grid_method(Method method, const HermitianMatrix& sample, const SteeringGrid& grid,
                               double noise_power, const ExperimentConfig& cfg) {
  SercomConfig sc;
  sc.maxiter = cfg.maxiter;
  sc.eps_p = cfg.eps_p;
  const StopRule stop{cfg.maxiter, cfg.eps_p};
  switch (method) {
    case Method::SercomJbld:
      sc.criterion = CriterionKind::JBLD;
      return sercom_estimate(sample, grid, noise_power, sc);
    case Method::SercomAirm:
      sc.criterion = CriterionKind::AIRM;
      return sercom_estimate(sample, grid, noise_power, sc);
    case Method::SercomLe:
      sc.criterion = CriterionKind::LE;
      return sercom_estimate(sample, grid, noise_power, sc);
    case Method::Spice:
      return spice_estimate(sample, grid, noise_power, stop);
    case Method::Samv:
      return samv_estimate(sample, grid, noise_power, stop);
    case Method::Esprit:
      break;
  }
  throw UnsupportedError("not a grid estimator");
}

template <typename T>
T get_field(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) throw ConfigError(where + ": missing field '" + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(where + ": field '" + key + "' has the wrong type (" + e.what() + ")");
  }
}

template <typename T>
T get_or(const json& j, const char* key, T fallback, const std::string& where) {
  return j.contains(key) ? get_field<T>(j, key, where) : fallback;
}

void check_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  for (const auto& item : j.items()) {
    if (std::find_if(allowed.begin(), allowed.end(), [&](const char* a) { return item.key() == a; }) ==
        allowed.end()) {
      throw ConfigError(where + ": unknown field '" + item.key() + "'");
    }
  }
}

}  // namespace

std::string_view to_string(Method method) {
  switch (method) {
    case Method::SercomJbld:
      return "SERCOM(JBLD)";
    case Method::SercomAirm:
      return "SERCOM(AIRM)";
    case Method::SercomLe:
      return "SERCOM(LE)";
    case Method::Spice:
      return "SPICE";
    case Method::Samv:
      return "SAMV";
    case Method::Esprit:
      return "ESPRIT";
  }
  return "?";
}

Method parse_method(std::string_view name) {
  const std::string n = lower(name);
  for (Method m : kAllMethods) {
    if (n == lower(to_string(m))) return m;
  }
  if (n == "jbld") return Method::SercomJbld;
  if (n == "airm") return Method::SercomAirm;
  if (n == "le") return Method::SercomLe;
  throw ConfigError("unknown method '" + std::string(name) +
                    "' (expected SERCOM(JBLD), SERCOM(AIRM), SERCOM(LE), SPICE, SAMV or ESPRIT)");
}

std::string_view to_string(SweepVariable v) {
  switch (v) {
    case SweepVariable::SnrDb:
      return "snr_db";
    case SweepVariable::Snapshots:
      return "n_snapshots";
    case SweepVariable::DeltaTheta:
      return "delta_theta_deg";
    case SweepVariable::Rho:
      return "rho";
  }
  return "?";
}

SweepVariable parse_sweep_variable(std::string_view name) {
  for (SweepVariable v : {SweepVariable::SnrDb, SweepVariable::Snapshots, SweepVariable::DeltaTheta,
                          SweepVariable::Rho}) {
    if (name == to_string(v)) return v;
  }
  throw ConfigError("unknown sweep variable '" + std::string(name) +
                    "' (expected snr_db, n_snapshots, delta_theta_deg or rho)");
}

void ExperimentConfig::validate() const {
  const std::string where = "experiment '" + name + "'";
  try {
    (void)ArrayGeometry::parse(geometry);
    (void)grid.build();
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(where + ": " + e.what());
  }
  if (scene.directions_deg.empty()) throw ConfigError(where + ": scene needs at least one source");
  if (scene.powers_db.size() != scene.directions_deg.size()) {
    throw ConfigError(where + ": directions_deg and powers_db differ in length");
  }
  if (scene.snr_db.has_value() == scene.noise_power.has_value()) {
    throw ConfigError(where + ": scene needs exactly one of snr_db and noise_power");
  }
  if (scene.noise_power && !(*scene.noise_power > 0.0)) throw ConfigError(where + ": noise_power must be positive");
  if (sweep_values.empty()) throw ConfigError(where + ": sweep value list is empty");
  if (trials < 1) throw ConfigError(where + ": trials must be at least 1");
  if (n_snapshots < 1) throw ConfigError(where + ": n_snapshots must be at least 1");
  if (estimators.empty()) throw ConfigError(where + ": estimator list is empty");
  if (maxiter < 1) throw ConfigError(where + ": maxiter must be at least 1");
  if (!(eps_p >= 0.0)) throw ConfigError(where + ": eps_p must be nonnegative");
  if (num_sources() > 6) throw ConfigError(where + ": at most 6 sources are supported");
  const auto geom = ArrayGeometry::parse(geometry);
  const bool esprit = std::find(estimators.begin(), estimators.end(), Method::Esprit) != estimators.end();
  if (esprit && geom.kind() != ArrayKind::ULA) throw ConfigError(where + ": ESPRIT needs a ULA geometry");
  for (double v : sweep_values) {
    if (!std::isfinite(v)) throw ConfigError(where + ": non-finite sweep value");
    try {
      scene_at(v).validate();
    } catch (const Error& e) {
      throw ConfigError(where + ": sweep value " + std::to_string(v) + ": " + e.what());
    }
    if (snapshots_at(v) < 1) throw ConfigError(where + ": snapshot count below 1");
  }
}

SourceScene ExperimentConfig::scene_at(double v) const {
  SourceScene s;
  s.directions_deg = scene.directions_deg;
  for (double db : scene.powers_db) s.powers_linear.push_back(db_to_linear(db));
  s.correlation_rho = scene.rho;
  if (sweep_variable == SweepVariable::DeltaTheta) {
    for (double& d : s.directions_deg) d += v;
  }
  if (sweep_variable == SweepVariable::Rho) s.correlation_rho = v;
  if (sweep_variable == SweepVariable::SnrDb) {
    s.noise_power = noise_power_for_snr(s, v);
  } else if (scene.snr_db) {
    s.noise_power = noise_power_for_snr(s, *scene.snr_db);
  } else {
    s.noise_power = scene.noise_power.value_or(1.0);
  }
  return s;
}

Index ExperimentConfig::snapshots_at(double v) const {
  if (sweep_variable == SweepVariable::Snapshots) return static_cast<Index>(std::llround(v));
  return n_snapshots;
}

std::string ExperimentConfig::to_json() const {
  json scene_j = {{"directions_deg", scene.directions_deg}, {"powers_db", scene.powers_db}, {"rho", scene.rho}};
  if (scene.snr_db) scene_j["snr_db"] = *scene.snr_db;
  if (scene.noise_power) scene_j["noise_power"] = *scene.noise_power;
  json methods = json::array();
  for (Method m : estimators) methods.push_back(std::string(to_string(m)));
  json j = {
      {"name", name},
      {"description", description},
      {"geometry", geometry},
      {"grid", {{"start", grid.start_deg}, {"stop", grid.stop_deg}, {"step", grid.step_deg}}},
      {"scene", scene_j},
      {"sweep", {{"variable", std::string(to_string(sweep_variable))}, {"values", sweep_values}}},
      {"n_snapshots", n_snapshots},
      {"trials", trials},
      {"full_trials", full_trials},
      {"seed", seed},
      {"estimators", methods},
      {"num_peaks", num_sources()},
      {"maxiter", maxiter},
      {"eps_p", eps_p},
  };
  return j.dump(2) + "\n";
}

ExperimentConfig ExperimentConfig::from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  const std::string top = "config";
  check_keys(j,
             {"name", "description", "geometry", "grid", "scene", "sweep", "n_snapshots", "trials", "full_trials",
              "seed", "estimators", "num_peaks", "maxiter", "eps_p"},
             top);
  ExperimentConfig c;
  c.name = get_field<std::string>(j, "name", top);
  c.description = get_or<std::string>(j, "description", "", top);
  c.geometry = get_field<std::string>(j, "geometry", top);
  if (j.contains("grid")) {
    const json& g = j.at("grid");
    check_keys(g, {"start", "stop", "step"}, "grid");
    c.grid.start_deg = get_field<double>(g, "start", "grid");
    c.grid.stop_deg = get_field<double>(g, "stop", "grid");
    c.grid.step_deg = get_field<double>(g, "step", "grid");
  }
  const json& s = j.at("scene");
  check_keys(s, {"directions_deg", "powers_db", "rho", "snr_db", "noise_power"}, "scene");
  c.scene.directions_deg = get_field<std::vector<double>>(s, "directions_deg", "scene");
  c.scene.powers_db = get_field<std::vector<double>>(s, "powers_db", "scene");
  c.scene.rho = get_or<double>(s, "rho", 0.0, "scene");
  if (s.contains("snr_db")) c.scene.snr_db = get_field<double>(s, "snr_db", "scene");
  if (s.contains("noise_power")) c.scene.noise_power = get_field<double>(s, "noise_power", "scene");
  if (!j.contains("sweep")) throw ConfigError("config: missing field 'sweep'");
  const json& sw = j.at("sweep");
  check_keys(sw, {"variable", "values"}, "sweep");
  c.sweep_variable = parse_sweep_variable(get_field<std::string>(sw, "variable", "sweep"));
  c.sweep_values = get_field<std::vector<double>>(sw, "values", "sweep");
  c.n_snapshots = get_or<Index>(j, "n_snapshots", c.n_snapshots, top);
  c.trials = get_or<std::size_t>(j, "trials", c.trials, top);
  c.full_trials = get_or<std::size_t>(j, "full_trials", c.full_trials, top);
  c.seed = get_or<std::uint64_t>(j, "seed", c.seed, top);
  for (const auto& name : get_field<std::vector<std::string>>(j, "estimators", top)) {
    c.estimators.push_back(parse_method(name));
  }
  c.maxiter = get_or<int>(j, "maxiter", c.maxiter, top);
  c.eps_p = get_or<double>(j, "eps_p", c.eps_p, top);
  if (j.contains("num_peaks") && get_field<std::size_t>(j, "num_peaks", top) != c.num_sources()) {
    throw ConfigError("config: num_peaks must equal the number of sources");
  }
  c.validate();
  return c;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw IoError(path.string() + ": cannot open config");
  std::stringstream ss;
  ss << is.rdbuf();
  try {
    return ExperimentConfig::from_json(ss.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

std::vector<std::string> preset_names() {
  return {"snr_sweep", "snapshot_sweep", "offgrid", "correlation", "uca_snr", "runtime_m12", "runtime_m120"};
}

ExperimentConfig preset(const std::string& name) {
  ExperimentConfig c;
  c.name = name;
  c.trials = 100;
  c.full_trials = 500;
  const SceneTemplate three{{35.0, 43.0, 51.0}, {0.0, 0.0, -5.0}, 0.0, -1.5, std::nullopt};
  const std::vector<double> snrs = {-4.5, -3.0, -1.5, 0.0, 1.5, 3.0, 4.5};
  if (name == "snr_sweep") {
    c.description = "ULA M=12, N=50, three uncorrelated sources, SNR from -4.5 to 4.5 dB";
    c.scene = three;
    c.sweep_variable = SweepVariable::SnrDb;
    c.sweep_values = snrs;
    c.estimators = kGridMethods;
    c.seed = 101;
  } else if (name == "snapshot_sweep") {
    c.description = "ULA M=12, SNR=-1.5 dB, N from M to 7M";
    c.scene = three;
    c.sweep_variable = SweepVariable::Snapshots;
    c.sweep_values = {12, 24, 36, 48, 60, 72, 84};
    c.estimators = kGridMethods;
    c.seed = 102;
  } else if (name == "offgrid") {
    c.description = "ULA M=12, N=50, 1 degree grid, two 0 dB sources at 35+dt and 51+dt, SNR=0 dB";
    c.grid = {0.0, 180.0, 1.0};
    c.scene = {{35.0, 51.0}, {0.0, 0.0}, 0.0, 0.0, std::nullopt};
    c.sweep_variable = SweepVariable::DeltaTheta;
    c.sweep_values = {0.0, 0.125, 0.25, 0.375, 0.5};
    c.estimators = kGridAndEsprit;
    c.seed = 103;
  } else if (name == "correlation") {
    c.description = "ULA M=12, N=50, SNR=0 dB, two 0 dB sources at 35 and 41 with correlation rho";
    c.scene = {{35.0, 41.0}, {0.0, 0.0}, 0.0, 0.0, std::nullopt};
    c.sweep_variable = SweepVariable::Rho;
    c.sweep_values = {0.0, 0.2, 0.4, 0.6, 0.8, 0.9, 1.0};
    c.estimators = kGridAndEsprit;
    c.seed = 104;
  } else if (name == "uca_snr") {
    c.description = "Semicircular UCA M=14, N=50, three uncorrelated sources, SNR from -4.5 to 4.5 dB";
    c.geometry = "uca:14";
    c.scene = three;
    c.sweep_variable = SweepVariable::SnrDb;
    c.sweep_values = snrs;
    c.estimators = kGridMethods;
    c.seed = 105;
  } else if (name == "runtime_m12") {
    c.description = "Runtime at M=12 (N=50, SNR=0 dB, three sources)";
    c.scene = three;
    c.sweep_variable = SweepVariable::SnrDb;
    c.sweep_values = {0.0};
    c.estimators = kGridMethods;
    c.seed = 106;
  } else if (name == "runtime_m120") {
    c.description = "Runtime at M=120 (N=240, SNR=0 dB, three sources)";
    c.geometry = "ula:120";
    c.scene = three;
    c.sweep_variable = SweepVariable::SnrDb;
    c.sweep_values = {0.0};
    c.n_snapshots = 240;
    c.trials = 20;
    c.estimators = kGridMethods;
    c.seed = 107;
  } else {
    std::string known;
    for (const auto& n : preset_names()) known += (known.empty() ? "" : ", ") + n;
    throw ConfigError("unknown preset '" + name + "' (known: " + known + ")");
  }
  c.validate();
  return c;
}

std::uint64_t trial_seed(std::uint64_t base, std::size_t trial) { return derive_seed(base, trial); }

TrialRecord run_trial(Method method, const HermitianMatrix& sample, const SourceScene& scene,
                      const ArrayGeometry& geom, const SteeringGrid& grid, const ExperimentConfig& cfg,
                      double sweep_value, std::uint64_t seed) {
  TrialRecord rec;
  rec.sweep_value = sweep_value;
  rec.estimator = std::string(to_string(method));
  rec.seed = seed;
  const std::size_t k = scene.num_sources();
  try {
    std::vector<double> doas;
    std::vector<double> powers;
    if (method == Method::Esprit) {
      const auto start = std::chrono::steady_clock::now();
      doas = esprit_baseline(sample, k, geom);
      powers = ls_source_powers(sample, doas, geom, scene.noise_power);
      rec.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    } else {
      const EstimateResult res = run_grid_method(method, sample, grid, scene.noise_power, cfg);
      const PeakSet peaks = extract_peaks(res.spectrum, k);
      doas = peaks.doas_deg;
      powers = peaks.powers_linear;
      rec.iterations = res.iterations;
      rec.wall_time_s = res.wall_time_s;
    }
    const Assignment pair = match_peaks_to_truth(doas, scene.directions_deg);
    for (std::size_t i = 0; i < k; ++i) {
      rec.doa_err_deg.push_back(doas[pair[i]] - scene.directions_deg[i]);
      rec.power_err.push_back(powers[pair[i]] - scene.powers_linear[i]);
    }
  } catch (const std::exception&) {
    rec.failed = true;
    rec.iterations = 0;
    rec.doa_err_deg.clear();
    rec.power_err.clear();
  }
  return rec;
}

MetricsSummary build_summary(const ExperimentConfig& cfg, const std::vector<TrialRecord>& records) {
  MetricsSummary s;
  s.experiment = cfg.name;
  s.sweep_variable = std::string(to_string(cfg.sweep_variable));
  s.cells = summarize(records);
  const auto geom = ArrayGeometry::parse(cfg.geometry);
  for (double v : cfg.sweep_values) {
    CrbPoint pt;
    pt.sweep_value = v;
    try {
      pt.per_source_deg = crb_doa(cfg.scene_at(v), geom, cfg.snapshots_at(v));
      pt.rmse_deg = trial_rms(pt.per_source_deg);
    } catch (const DegenerateError&) {
      pt.degenerate = true;
      pt.rmse_deg = std::numeric_limits<double>::quiet_NaN();
    }
    s.crb.push_back(std::move(pt));
  }
  return s;
}

SweepResult run_sweep(const ExperimentConfig& cfg, const SweepOptions& options) {
  cfg.validate();
  const auto geom = ArrayGeometry::parse(cfg.geometry);
  const SteeringGrid grid = SteeringGrid::build(geom, cfg.grid.build());
  const std::size_t nv = cfg.sweep_values.size();
  const std::size_t nt = cfg.trials;
  const std::size_t ne = cfg.estimators.size();

  auto sample_for = [&](std::size_t v, std::size_t t) {
    const SourceScene scene = cfg.scene_at(cfg.sweep_values[v]);
    return sample_covariance(simulate_snapshots(scene, geom, cfg.snapshots_at(cfg.sweep_values[v]),
                                                trial_seed(cfg.seed, t)));
  };

  if (options.warm_up) {
    const HermitianMatrix sample = sample_for(0, 0);
    const SourceScene scene = cfg.scene_at(cfg.sweep_values[0]);
    for (Method m : cfg.estimators) {
      (void)run_trial(m, sample, scene, geom, grid, cfg, cfg.sweep_values[0], trial_seed(cfg.seed, 0));
    }
  }

  std::vector<TrialRecord> records(nv * nt * ne);
  const std::size_t tasks = nv * nt;
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> done{0};
  std::mutex progress_mutex;

  auto worker = [&] {
    for (std::size_t task = next++; task < tasks; task = next++) {
      const std::size_t v = task / nt;
      const std::size_t t = task % nt;
      const double value = cfg.sweep_values[v];
      const SourceScene scene = cfg.scene_at(value);
      const std::uint64_t seed = trial_seed(cfg.seed, t);
      const HermitianMatrix sample = sample_for(v, t);
      for (std::size_t e = 0; e < ne; ++e) {
        records[task * ne + e] = run_trial(cfg.estimators[e], sample, scene, geom, grid, cfg, value, seed);
      }
      const std::size_t finished = ++done;
      if (options.progress) {
        const std::lock_guard<std::mutex> lock(progress_mutex);
        options.progress(finished, tasks);
      }
    }
  };

  unsigned threads = options.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : options.threads;
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, tasks));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  SweepResult out;
  out.summary = build_summary(cfg, records);
  out.records = std::move(records);
  return out;
}

}  // namespace sercom
