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

// sercom_bench: run Monte Carlo presets, inspect them, or estimate a spectrum
// from a snapshot file.
//
//   sercom_bench list-presets
//   sercom_bench show-preset snr_sweep
//   sercom_bench run snr_sweep --trials 20 --out-dir out/snr
//   sercom_bench run my_config.json --threads 4
//   sercom_bench simulate --geometry ula:12 --directions 35,51 --powers-db 0,0 --snr-db 0 --snapshots 50 --out y.snap
//   sercom_bench estimate --input y.snap --geometry ula:12 --method jbld --noise-power 0.5 --peaks 3

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sercom/baselines.hpp"
#include "sercom/experiment.hpp"
#include "sercom/results_io.hpp"
#include "sercom/snapshot_io.hpp"

namespace {

using namespace sercom;

ExperimentConfig resolve_config(const std::string& target) {
  const std::filesystem::path p(target);
  if (std::filesystem::exists(p) && std::filesystem::is_regular_file(p)) return load_experiment_config(p);
  return preset(target);
}

void print_summary(const MetricsSummary& s) {
  std::printf("%-14s %12s %7s %12s %12s %10s %10s\n", "estimator", s.sweep_variable.c_str(), "fail",
              "rmse_doa", "rmse_power", "mean_iter", "median_s");
  for (const auto& c : s.cells) {
    std::printf("%-14s %12g %7zu %12.4f %12.4f %10.1f %10.4f\n", c.estimator.c_str(), c.sweep_value, c.failures,
                c.rmse_doa_deg, c.rmse_power, c.mean_iterations, c.wall_time_s.median);
  }
  for (const auto& p : s.crb) {
    if (p.degenerate) {
      std::printf("CRB %12g  degenerate\n", p.sweep_value);
    } else {
      std::printf("CRB %12g  %.4f deg\n", p.sweep_value, p.rmse_deg);
    }
  }
}

int cmd_run(const std::string& target, int trials, long long seed, const std::string& out_dir, unsigned threads,
            bool quiet) {
  ExperimentConfig cfg = resolve_config(target);
  if (trials > 0) cfg.trials = static_cast<std::size_t>(trials);
  if (seed >= 0) cfg.seed = static_cast<std::uint64_t>(seed);
  cfg.validate();
  const std::filesystem::path dir = out_dir.empty() ? std::filesystem::path("results") / cfg.name : std::filesystem::path(out_dir);

  SweepOptions opts;
  opts.threads = threads;
  if (!quiet) {
    opts.progress = [](std::size_t done, std::size_t total) {
      std::fprintf(stderr, "\r%zu/%zu", done, total);
      if (done == total) std::fprintf(stderr, "\n");
    };
  }
  const SweepResult res = run_sweep(cfg, opts);
  export_results(res.records, res.summary, dir);
  std::ofstream(dir / "config.json") << cfg.to_json();
  if (!quiet) print_summary(res.summary);
  std::printf("wrote %s\n", (dir / "records.csv").string().c_str());
  return 0;
}

AngularGrid parse_grid(const std::string& spec) {
  if (spec.empty()) return AngularGrid::standard();
  double start = 0.0;
  double stop = 0.0;
  double step = 0.0;
  char tail = 0;
  if (std::sscanf(spec.c_str(), "%lf:%lf:%lf%c", &start, &stop, &step, &tail) != 3) {
    throw ConfigError("grid must be 'start:stop:step' in degrees, got '" + spec + "'");
  }
  return AngularGrid::from_range(start, stop, step);
}

int cmd_estimate(const std::string& input, const std::string& geometry, const std::string& method_name,
                 double noise_power, const std::string& grid_spec, int peaks, const std::string& out) {
  const auto geom = ArrayGeometry::parse(geometry);
  const SnapshotSet snaps = read_snapshots(input);
  if (snaps.num_sensors() != geom.size()) {
    throw ConfigError("snapshot file has " + std::to_string(snaps.num_sensors()) + " sensors but geometry '" +
                      geometry + "' has " + std::to_string(geom.size()));
  }
  const HermitianMatrix sample = sample_covariance(snaps);
  const Method method = parse_method(method_name);
  nlohmann::json j = {{"method", std::string(to_string(method))},
                      {"geometry", geom.describe()},
                      {"num_snapshots", snaps.num_snapshots()},
                      {"noise_power", noise_power}};
  if (method == Method::Esprit) {
    if (peaks < 1) throw ConfigError("ESPRIT needs --peaks");
    const auto doas = esprit_baseline(sample, static_cast<std::size_t>(peaks), geom);
    j["peaks"] = {{"doas_deg", doas}, {"powers_linear", ls_source_powers(sample, doas, geom, noise_power)}};
  } else {
    const SteeringGrid grid = SteeringGrid::build(geom, parse_grid(grid_spec));
    EstimateResult res = [&] {
      SercomConfig sc;
      switch (method) {
        case Method::SercomAirm:
          sc.criterion = CriterionKind::AIRM;
          return sercom_estimate(sample, grid, noise_power, sc);
        case Method::SercomLe:
          sc.criterion = CriterionKind::LE;
          return sercom_estimate(sample, grid, noise_power, sc);
        case Method::Spice:
          return spice_estimate(sample, grid, noise_power);
        case Method::Samv:
          return samv_estimate(sample, grid, noise_power);
        default:
          return sercom_estimate(sample, grid, noise_power, sc);
      }
    }();
    j["iterations"] = res.iterations;
    j["converged"] = res.converged;
    j["wall_time_s"] = res.wall_time_s;
    j["grid_deg"] = res.spectrum.grid.degrees();
    j["p"] = std::vector<double>(res.spectrum.p.data(), res.spectrum.p.data() + res.spectrum.p.size());
    if (peaks > 0) {
      const PeakSet ps = extract_peaks(res.spectrum, static_cast<std::size_t>(peaks));
      j["peaks"] = {{"indices", ps.indices}, {"doas_deg", ps.doas_deg}, {"powers_linear", ps.powers_linear}};
    }
  }
  const std::string text = j.dump(2) + "\n";
  if (out.empty()) {
    std::cout << text;
  } else {
    std::ofstream os(out);
    if (!os) throw IoError(out + ": cannot open for writing");
    os << text;
  }
  return 0;
}

int cmd_simulate(const std::string& geometry, const std::vector<double>& directions,
                 const std::vector<double>& powers_db, double rho, double snr, Index n, std::uint64_t seed,
                 const std::string& out) {
  const auto geom = ArrayGeometry::parse(geometry);
  if (directions.size() != powers_db.size()) throw ConfigError("--directions and --powers-db differ in length");
  SourceScene scene;
  scene.directions_deg = directions;
  for (double db : powers_db) scene.powers_linear.push_back(db_to_linear(db));
  scene.correlation_rho = rho;
  scene.noise_power = scene.num_sources() ? noise_power_for_snr(scene, snr) : 1.0;
  scene.validate();
  const SnapshotSet y = simulate_snapshots(scene, geom, n, seed);
  const std::filesystem::path path(out);
  if (path.extension() == ".csv") {
    write_snapshots_csv(y, path);
  } else {
    write_snapshots_binary(y, path);
  }
  std::printf("noise_power %.17g\n", scene.noise_power);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SERCOM spatial power estimation benchmarks"};
  app.require_subcommand(1);

  auto* list = app.add_subcommand("list-presets", "List the built-in experiment presets");
  auto* show = app.add_subcommand("show-preset", "Print a preset as a JSON config");
  std::string show_name;
  show->add_option("name", show_name, "Preset name")->required();

  auto* run = app.add_subcommand("run", "Run a preset or a JSON config file");
  std::string target;
  int trials = 0;
  long long seed = -1;
  std::string out_dir;
  unsigned threads = 0;
  bool quiet = false;
  run->add_option("target", target, "Preset name or config file")->required();
  run->add_option("--trials", trials, "Override the number of Monte Carlo trials")->check(CLI::PositiveNumber);
  run->add_option("--seed", seed, "Override the base seed")->check(CLI::NonNegativeNumber);
  run->add_option("--out-dir", out_dir, "Output directory (default results/<name>)");
  run->add_option("--threads", threads, "Worker threads (0 = all cores)");
  run->add_flag("--quiet", quiet, "No progress or summary table");

  auto* est = app.add_subcommand("estimate", "Estimate a spatial spectrum from a snapshot file");
  std::string input;
  std::string geometry;
  std::string method = "SERCOM(JBLD)";
  double noise_power = 0.0;
  std::string grid_spec;
  int peaks = 0;
  std::string out;
  est->add_option("--input", input, "Snapshot file (binary .snap or CSV)")->required();
  est->add_option("--geometry", geometry, "Array: ula:M[:spacing] or uca:M")->required();
  est->add_option("--method", method, "SERCOM(JBLD)|SERCOM(AIRM)|SERCOM(LE)|SPICE|SAMV|ESPRIT (or jbld, airm, ...)");
  est->add_option("--noise-power", noise_power, "Known noise power")->required();
  est->add_option("--grid", grid_spec, "start:stop:step in degrees (default 0:180:0.5)");
  est->add_option("--peaks", peaks, "Number of peaks to report");
  est->add_option("--out", out, "Write JSON here instead of stdout");

  auto* sim = app.add_subcommand("simulate", "Write simulated snapshots to a file");
  std::string sim_geometry;
  std::vector<double> sim_dirs;
  std::vector<double> sim_powers;
  double sim_rho = 0.0;
  double sim_snr = 0.0;
  Index sim_n = 50;
  std::uint64_t sim_seed = 1;
  std::string sim_out;
  sim->add_option("--geometry", sim_geometry, "Array: ula:M[:spacing] or uca:M")->required();
  sim->add_option("--directions", sim_dirs, "Source directions in degrees")->delimiter(',');
  sim->add_option("--powers-db", sim_powers, "Source powers in dB")->delimiter(',');
  sim->add_option("--rho", sim_rho, "Correlation of a source pair");
  sim->add_option("--snr-db", sim_snr, "SNR of the strongest source");
  sim->add_option("--snapshots", sim_n, "Number of snapshots")->check(CLI::PositiveNumber);
  sim->add_option("--seed", sim_seed, "Simulation seed");
  sim->add_option("--out", sim_out, "Output file (.csv for text, binary otherwise)")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*list) {
      for (const auto& name : preset_names()) std::printf("%-16s %s\n", name.c_str(), preset(name).description.c_str());
      return 0;
    }
    if (*show) {
      std::cout << preset(show_name).to_json();
      return 0;
    }
    if (*run) return cmd_run(target, trials, seed, out_dir, threads, quiet);
    if (*sim) return cmd_simulate(sim_geometry, sim_dirs, sim_powers, sim_rho, sim_snr, sim_n, sim_seed, sim_out);
    if (*est) return cmd_estimate(input, geometry, method, noise_power, grid_spec, peaks, out);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
