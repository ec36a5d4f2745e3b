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

// Python bindings: criteria, simulation, estimators and the sweep runner.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "sercom/baselines.hpp"
#include "sercom/criteria.hpp"
#include "sercom/estimators.hpp"
#include "sercom/experiment.hpp"
#include "sercom/results_io.hpp"
#include "sercom/snapshot_io.hpp"

namespace py = pybind11;
using namespace sercom;

namespace {

HermitianMatrix herm(const CMatrix& m) { return HermitianMatrix::from_matrix(m); }

SourceScene make_scene(const std::vector<double>& directions, const std::vector<double>& powers,
                       double noise_power, double rho) {
  SourceScene s;
  s.directions_deg = directions;
  s.powers_linear = powers;
  s.noise_power = noise_power;
  s.correlation_rho = rho;
  s.validate();
  return s;
}

AngularGrid make_grid(const std::vector<double>& grid_deg) {
  return grid_deg.empty() ? AngularGrid::standard() : AngularGrid(grid_deg);
}

py::dict estimate(const CMatrix& sample, const std::string& geometry, const std::string& method,
                  double noise_power, const std::vector<double>& grid_deg, int maxiter, double eps_p) {
  const auto a = SteeringGrid::build(ArrayGeometry::parse(geometry), make_grid(grid_deg));
  const auto r = herm(sample);
  const Method m = parse_method(method);
  EstimateResult res = [&] {
    py::gil_scoped_release release;
    SercomConfig cfg;
    cfg.maxiter = maxiter;
    cfg.eps_p = eps_p;
    switch (m) {
      case Method::SercomJbld:
        return sercom_estimate(r, a, noise_power, cfg);
      case Method::SercomAirm:
        cfg.criterion = CriterionKind::AIRM;
        return sercom_estimate(r, a, noise_power, cfg);
      case Method::SercomLe:
        cfg.criterion = CriterionKind::LE;
        return sercom_estimate(r, a, noise_power, cfg);
      case Method::Spice:
        return spice_estimate(r, a, noise_power, StopRule{maxiter, eps_p});
      case Method::Samv:
        return samv_estimate(r, a, noise_power, StopRule{maxiter, eps_p});
      default:
        throw ConfigError("estimate: ESPRIT is gridless, use esprit()");
    }
  }();
  py::dict d;
  d["p"] = res.spectrum.p;
  d["grid_deg"] = res.spectrum.grid.degrees();
  d["iterations"] = res.iterations;
  d["converged"] = res.converged;
  d["wall_time_s"] = res.wall_time_s;
  return d;
}

py::dict peaks(const RVector& p, const std::vector<double>& grid_deg, std::size_t k) {
  const PeakSet ps = extract_peaks(PowerSpectrum{AngularGrid(grid_deg), p, 0.0}, k);
  py::dict d;
  d["indices"] = ps.indices;
  d["doas_deg"] = ps.doas_deg;
  d["powers_linear"] = ps.powers_linear;
  return d;
}

py::tuple run_experiment(const std::string& target, std::optional<std::size_t> trials,
                         std::optional<std::uint64_t> seed, unsigned threads,
                         std::optional<std::filesystem::path> out_dir) {
  const std::filesystem::path p(target);
  ExperimentConfig cfg = std::filesystem::is_regular_file(p) ? load_experiment_config(p) : preset(target);
  if (trials) cfg.trials = *trials;
  if (seed) cfg.seed = *seed;
  cfg.validate();
  SweepResult res;
  {
    py::gil_scoped_release release;
    SweepOptions opts;
    opts.threads = threads;
    res = run_sweep(cfg, opts);
    if (out_dir) export_results(res.records, res.summary, *out_dir);
  }
  return py::make_tuple(records_to_csv(res.records), summary_to_json(res.summary));
}

}  // namespace

PYBIND11_MODULE(_sercom, m) {
  m.doc() = "Spatial power estimation by Riemannian covariance matching";

  // Translators run newest-first, so the base class is registered first.
  const auto base = py::register_exception<Error>(m, "SercomError", PyExc_RuntimeError);
  py::register_exception<DefinitenessError>(m, "DefinitenessError", base);
  py::register_exception<ShapeError>(m, "ShapeError", base);
  py::register_exception<DomainError>(m, "DomainError", base);
  py::register_exception<UnsupportedError>(m, "UnsupportedError", base);
  py::register_exception<DegenerateError>(m, "DegenerateError", base);
  py::register_exception<IoError>(m, "IoError", base);
  py::register_exception<ConfigError>(m, "ConfigError", base);

  m.def("dist_airm", [](const CMatrix& a, const CMatrix& b) { return dist_airm(herm(a), herm(b)); },
        "Squared affine-invariant Riemannian distance.", py::arg("r1"), py::arg("r2"));
  m.def("dist_le", [](const CMatrix& a, const CMatrix& b) { return dist_le(herm(a), herm(b)); },
        "Squared Log-Euclidean distance.", py::arg("r1"), py::arg("r2"));
  m.def("dist_jbld", [](const CMatrix& a, const CMatrix& b) { return dist_jbld(herm(a), herm(b)); },
        "Jensen-Bregman LogDet divergence.", py::arg("r1"), py::arg("r2"));
  m.def("crit_amv", [](const CMatrix& r, const CMatrix& s) { return crit_amv(herm(r), herm(s)); },
        py::arg("model"), py::arg("sample"));
  m.def("crit_spice", [](const CMatrix& r, const CMatrix& s) { return crit_spice(herm(r), herm(s)); },
        py::arg("model"), py::arg("sample"));
  m.def("psi", [](const std::string& kind, double lambda) { return psi(parse_criterion(kind), lambda); },
        "Per-eigenvalue penalty of AMV, SPICE, AIRM or JBLD.", py::arg("criterion"), py::arg("lam"));

  m.def("steering_matrix",
        [](const std::string& geometry, const std::vector<double>& grid_deg) {
          return steering_matrix(ArrayGeometry::parse(geometry), make_grid(grid_deg));
        },
        "Steering matrix (M x D) of a geometry such as 'ula:12' on a grid in degrees.", py::arg("geometry"),
        py::arg("grid_deg") = std::vector<double>{});
  m.def("simulate_snapshots",
        [](const std::string& geometry, const std::vector<double>& directions, const std::vector<double>& powers,
           double noise_power, Index n, std::uint64_t seed, double rho) {
          return simulate_snapshots(make_scene(directions, powers, noise_power, rho), ArrayGeometry::parse(geometry),
                                    n, seed)
              .data;
        },
        "Complex M x N snapshot matrix.", py::arg("geometry"), py::arg("directions_deg"), py::arg("powers_linear"),
        py::arg("noise_power"), py::arg("n"), py::arg("seed"), py::arg("rho") = 0.0);
  m.def("sample_covariance", [](const CMatrix& y) { return sample_covariance(SnapshotSet{y}).matrix(); },
        py::arg("snapshots"));
  m.def("population_covariance",
        [](const std::string& geometry, const std::vector<double>& directions, const std::vector<double>& powers,
           double noise_power, double rho) {
          return population_covariance(make_scene(directions, powers, noise_power, rho),
                                       ArrayGeometry::parse(geometry))
              .matrix();
        },
        py::arg("geometry"), py::arg("directions_deg"), py::arg("powers_linear"), py::arg("noise_power"),
        py::arg("rho") = 0.0);
  m.def("read_snapshots", [](const std::filesystem::path& p) { return read_snapshots(p).data; }, py::arg("path"));
  m.def("write_snapshots",
        [](const CMatrix& y, const std::filesystem::path& p) {
          if (p.extension() == ".csv") {
            write_snapshots_csv(SnapshotSet{y}, p);
          } else {
            write_snapshots_binary(SnapshotSet{y}, p);
          }
        },
        "Write snapshots; '.csv' selects the text format, anything else the binary one.", py::arg("snapshots"),
        py::arg("path"));

  m.def("estimate", &estimate,
        "Estimate the spatial spectrum with SERCOM(JBLD|AIRM|LE), SPICE or SAMV. Returns a dict with p, grid_deg, "
        "iterations, converged and wall_time_s.",
        py::arg("sample"), py::arg("geometry"), py::arg("method") = "SERCOM(JBLD)", py::arg("noise_power") = 1.0,
        py::arg("grid_deg") = std::vector<double>{}, py::arg("maxiter") = 5000, py::arg("eps_p") = 1e-4);
  m.def("extract_peaks", &peaks, py::arg("p"), py::arg("grid_deg"), py::arg("k"));
  m.def("esprit",
        [](const CMatrix& sample, std::size_t k, const std::string& geometry) {
          return esprit_baseline(herm(sample), k, ArrayGeometry::parse(geometry));
        },
        py::arg("sample"), py::arg("k"), py::arg("geometry"));
  m.def("crb_doa",
        [](const std::string& geometry, const std::vector<double>& directions, const std::vector<double>& powers,
           double noise_power, Index n, double rho) {
          return crb_doa(make_scene(directions, powers, noise_power, rho), ArrayGeometry::parse(geometry), n);
        },
        "Per-source stochastic CRB standard deviation in degrees.", py::arg("geometry"), py::arg("directions_deg"),
        py::arg("powers_linear"), py::arg("noise_power"), py::arg("n"), py::arg("rho") = 0.0);

  m.def("preset_names", &preset_names);
  m.def("preset_json", [](const std::string& name) { return preset(name).to_json(); }, py::arg("name"));
  m.def("run_experiment", &run_experiment,
        "Run a preset or config file. Returns (records_csv, summary_json) and optionally writes both to out_dir.",
        py::arg("target"), py::arg("trials") = py::none(), py::arg("seed") = py::none(), py::arg("threads") = 0,
        py::arg("out_dir") = py::none());
  m.attr("RECORDS_HEADER") = kRecordsHeader;
}
