"""Reproducible experiment driver.

A run is fully determined by its configuration: trial i at scale index s
draws from the Philox stream keyed by (master seed, s << 32 | i), so a
rerun -- with any worker count -- reproduces the results file byte for
byte.  Rows are aggregated in trial order regardless of completion order,
appended to results.csv, and a manifest written last acts as the
completeness marker.
"""

import configparser
import csv
import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from functools import lru_cache

from . import gff, pointsets, walk

RESULTS_HEADER = ["n", "alpha", "beta", "j", "kind", "trial", "count", "set_size", "seed"]
ARTIFACT_VERSION = "0.1.0"

_KINDS = ("favorite", "truncated", "late", "high")


class ConfigError(ValueError):
    """Invalid experiment configuration; the message names the violated rule."""


@dataclass
class ExperimentConfig:
    scales: list
    alpha: float = 0.1
    beta: float = 0.5
    j: int = 2
    trials: int = 1
    seed: int = 0
    workers: int = 1
    out: str = "."
    kind: str = "favorite"

    def validate(self):
        if not self.scales:
            raise ConfigError("scales: empty")
        if any(b <= a for a, b in zip(self.scales, self.scales[1:])):
            raise ConfigError("scales: must be strictly increasing")
        if self.trials < 1:
            raise ConfigError("trials: must be >= 1")
        if not 0 < self.alpha < 1:
            raise ConfigError("alpha: must lie in (0, 1)")
        if not 0 < self.beta < 1:
            raise ConfigError("beta: must lie in (0, 1)")
        if self.j < 2:
            raise ConfigError("j: must be >= 2")
        if self.kind not in _KINDS:
            raise ConfigError(f"kind: must be one of {_KINDS}")
        if self.kind in ("favorite", "truncated") and min(self.scales) < 3:
            raise ConfigError("scales: favorite-point extraction needs n >= 3")
        if self.kind in ("late", "high") and min(self.scales) < 2:
            raise ConfigError("scales: torus/box experiments need n >= 2")
        if self.kind == "high" and max(self.scales) > 128:
            raise ConfigError("scales: GFF covariance factorization is limited to n <= 128")
        if self.workers < 1:
            raise ConfigError("workers: must be >= 1")
        return self


def load_config(path, overrides=None):
    """Read a key = value config file ([experiment] section) plus overrides."""
    parser = configparser.ConfigParser()
    read = parser.read(path)
    if not read:
        raise ConfigError(f"config file not found: {path}")
    if "experiment" not in parser:
        raise ConfigError("config file must contain an [experiment] section")
    sec = parser["experiment"]
    kwargs = {}
    if "scales" in sec:
        kwargs["scales"] = [int(v) for v in sec["scales"].replace(",", " ").split()]
    for key, conv in (
        ("alpha", float),
        ("beta", float),
        ("j", int),
        ("trials", int),
        ("seed", int),
        ("workers", int),
        ("kind", str),
        ("out", str),
    ):
        if key in sec:
            kwargs[key] = conv(sec[key])
    if overrides:
        kwargs.update({k: v for k, v in overrides.items() if v is not None})
    if "scales" not in kwargs:
        raise ConfigError("scales: required")
    return ExperimentConfig(**kwargs).validate()


@dataclass
class RunManifest:
    config: dict
    version: str
    started: str
    finished: str
    per_scale: list
    fit: dict
    complete: bool = True

    def save(self, path):
        with open(path, "w") as fh:
            json.dump(asdict(self), fh, indent=2)


def _trial_seed_index(scale_idx, trial):
    return (scale_idx << 32) | trial


@lru_cache(maxsize=2)
def _cached_factor(n):
    return gff.build_covariance(n)


def _run_trial(task):
    kind, n, scale_idx, trial, alpha, beta, j, seed = task
    sidx = _trial_seed_index(scale_idx, trial)
    rng = walk.stream(seed, sidx)
    if kind in ("favorite", "truncated"):
        rec = walk.simulate_disk_walk(n, seed, rng=rng)
        pset = pointsets.favorite_points(rec, alpha, truncated=(kind == "truncated"))
    elif kind == "late":
        rec = walk.simulate_torus_walk(n, seed, mode="until-covered", rng=rng)
        pset = pointsets.late_points(rec, alpha)
    else:
        s = gff.sample(_cached_factor(n), seed, rng=rng)
        pset = pointsets.high_points(s, alpha)
    report = pointsets.tuple_count(pset, beta, j)
    return scale_idx, trial, report.count, report.set_size, sidx


def run_experiment(config):
    """Execute all trials, append results.csv, and write manifest.json.

    Returns the manifest.  Identical configs give byte-identical
    results.csv regardless of the worker count.
    """
    config.validate()
    os.makedirs(config.out, exist_ok=True)
    results_path = os.path.join(config.out, "results.csv")
    manifest_path = os.path.join(config.out, "manifest.json")
    started = time.strftime("%Y-%m-%dT%H:%M:%S", time.gmtime())

    tasks = [
        (config.kind, n, si, t, config.alpha, config.beta, config.j, config.seed)
        for si, n in enumerate(config.scales)
        for t in range(config.trials)
    ]
    if config.workers > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            rows = list(pool.map(_run_trial, tasks, chunksize=4))
    else:
        rows = [_run_trial(t) for t in tasks]
    rows.sort(key=lambda r: (r[0], r[1]))

    with open(results_path, "a", newline="") as fh:
        writer = csv.writer(fh)
        if fh.tell() == 0:
            writer.writerow(RESULTS_HEADER)
        for scale_idx, trial, count, set_size, sidx in rows:
            writer.writerow(
                [
                    config.scales[scale_idx],
                    config.alpha,
                    config.beta,
                    config.j,
                    config.kind,
                    trial,
                    count,
                    set_size,
                    sidx,
                ]
            )
            fh.flush()

    per_scale = []
    series = []
    for si, n in enumerate(config.scales):
        counts = [r[2] for r in rows if r[0] == si]
        sizes = [r[3] for r in rows if r[0] == si]
        mean_count = sum(counts) / len(counts)
        per_scale.append(
            {
                "n": n,
                "trials": len(counts),
                "mean_count": mean_count,
                "max_count": max(counts),
                "mean_set_size": sum(sizes) / len(sizes),
            }
        )
        series.append((n, mean_count))
    fit = None
    if len([1 for _, c in series if c > 0]) >= 3:
        f = pointsets.exponent_fit(series)
        fit = {
            "slope": f.slope,
            "intercept": f.intercept,
            "stderr": f.stderr,
            "excluded_zero": f.excluded_zero,
        }
    manifest = RunManifest(
        config=asdict(config),
        version=ARTIFACT_VERSION,
        started=started,
        finished=time.strftime("%Y-%m-%dT%H:%M:%S", time.gmtime()),
        per_scale=per_scale,
        fit=fit,
    )
    manifest.save(manifest_path)
    return manifest


def inspect_run(out_dir):
    """Summarize a prior output directory; flags incomplete runs.

    A results.csv without a manifest (the terminal completeness marker)
    means the run was interrupted.
    """
    results_path = os.path.join(out_dir, "results.csv")
    manifest_path = os.path.join(out_dir, "manifest.json")
    summary = {"out": out_dir, "has_results": os.path.exists(results_path)}
    if os.path.exists(manifest_path):
        with open(manifest_path) as fh:
            manifest = json.load(fh)
        summary["complete"] = bool(manifest.get("complete", False))
        summary["manifest"] = manifest
    else:
        summary["complete"] = False
        summary["manifest"] = None
    if summary["has_results"]:
        with open(results_path) as fh:
            rows = list(csv.reader(fh))
        summary["rows"] = len(rows) - 1
    else:
        summary["rows"] = 0
    return summary
