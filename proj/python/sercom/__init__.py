# SPDX-License-Identifier: Apache-2.0
"""Spatial power estimation by Riemannian covariance matching."""

import csv
import io
import json

from ._sercom import (
    RECORDS_HEADER,
    ConfigError,
    DefinitenessError,
    DegenerateError,
    DomainError,
    IoError,
    SercomError,
    ShapeError,
    UnsupportedError,
    crb_doa,
    crit_amv,
    crit_spice,
    dist_airm,
    dist_jbld,
    dist_le,
    esprit,
    estimate,
    extract_peaks,
    population_covariance,
    preset_json,
    preset_names,
    psi,
    read_snapshots,
    run_experiment,
    sample_covariance,
    simulate_snapshots,
    steering_matrix,
    write_snapshots,
)


def _floats(field):
    return [float(v) for v in field.split(";")] if field else []


def parse_records(text):
    """Rows of a records.csv as dicts with typed fields."""
    rows = []
    for row in csv.DictReader(io.StringIO(text)):
        rows.append(
            {
                "sweep_value": float(row["sweep_value"]),
                "estimator": row["estimator"],
                "seed": int(row["seed"]),
                "iterations": int(row["iterations"]),
                "wall_time_s": float(row["wall_time_s"]),
                "failed": row["failed"] == "1",
                "doa_err_deg": _floats(row["doa_err_deg"]),
                "power_err": _floats(row["power_err"]),
            }
        )
    return rows


def read_records(path):
    with open(path, encoding="utf-8") as f:
        return parse_records(f.read())


def read_summary(path):
    with open(path, encoding="utf-8") as f:
        return json.load(f)


def preset(name):
    """Preset configuration as a dict."""
    return json.loads(preset_json(name))


__all__ = [name for name in dir() if not name.startswith("_") and name not in ("csv", "io", "json")]
