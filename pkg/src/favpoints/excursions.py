"""Annulus excursion counting and multiscale schedules.

An (inward) excursion across the annulus {r_inner < d(., z) <= r_outer}
is a path segment that starts outside radius r_outer and subsequently
reaches distance <= r_inner from the center; the reversed direction
counts inner-to-outer crossings.  Schedules pair a radius ladder with the
reference excursion counts 6*alpha*(n-k)^2*log k (outward ladder) and
6*gamma^2*alpha*k^2*log k (rescaled ladder); the factorial ladder
r_k = (k!)^3 is faithful only while it fits 64 bits, so statistical
diagnostics run on geometric surrogate radii.
"""

import json
import math
from dataclasses import dataclass

import numpy as np

_FACTORIAL_MAX_K = 20  # (21!)^3 overflows 64-bit


@dataclass
class AnnulusSchedule:
    kind: str  # factorial | geometric
    radii: list
    alpha: float
    gamma: float
    n: int

    def __post_init__(self):
        if any(b <= a for a, b in zip(self.radii, self.radii[1:])):
            raise ValueError("radii must be strictly increasing")

    @property
    def levels(self):
        return len(self.radii)

    def reference_count(self, k):
        """n_k = 6 alpha (n - k)^2 log k, the outward-ladder reference."""
        return 6.0 * self.alpha * (self.n - k) ** 2 * math.log(k)

    def rescaled_reference_count(self, k):
        """n-tilde_k = 6 gamma^2 alpha k^2 log k, the rescaled-ladder reference."""
        return 6.0 * self.gamma**2 * self.alpha * k**2 * math.log(k)


def build_schedule(kind, levels, alpha=0.5, gamma=1.0, n=None, r_base=None, ratio=None):
    """Construct a radius ladder of `levels` annuli.

    kind="factorial": r_k = (k!)^3 for k = 1..levels, refused past k = 20
    where the value leaves 64-bit range.
    kind="geometric": r_k = r_base * ratio^(k-1) with ratio > 1.
    """
    if levels < 2:
        raise ValueError("need at least 2 levels")
    if kind == "factorial":
        if levels > _FACTORIAL_MAX_K:
            raise ValueError(
                f"(k!)^3 is unrepresentable in 64 bits past k = {_FACTORIAL_MAX_K}"
            )
        radii = [math.factorial(k) ** 3 for k in range(1, levels + 1)]
    elif kind == "geometric":
        if r_base is None or ratio is None or ratio <= 1:
            raise ValueError("geometric schedule needs r_base and ratio > 1")
        radii = [r_base * ratio**k for k in range(levels)]
    else:
        raise ValueError(f"unknown schedule kind {kind!r}")
    return AnnulusSchedule(
        kind=kind, radii=radii, alpha=alpha, gamma=gamma, n=n if n is not None else levels
    )


def _radius_states(path, z, r_inner, r_outer):
    """Per-step 3-valued state: 1 inside r_inner, 2 beyond r_outer, 0 between.

    Distances use closed disks (<= r), consistent with D(x, r).
    """
    path = np.asarray(path, dtype=np.int64)
    dx = path[:, 0] - int(z[0])
    dy = path[:, 1] - int(z[1])
    d2 = dx * dx + dy * dy
    states = np.zeros(len(path), dtype=np.int8)
    states[d2 <= r_inner * r_inner] = 1
    states[d2 > r_outer * r_outer] = 2
    return states


def count_excursions(path, z, r_outer, r_inner, reverse=False):
    """Number of annulus crossings of an ordered lattice path around z.

    Forward (reverse=False): segments from outside radius r_outer to inside
    radius r_inner (the path start counts as "outside" if it begins beyond
    r_outer).  reverse=True counts inner-to-outer crossings instead.  The
    two counts differ by at most 1 because crossings alternate.
    """
    if r_inner >= r_outer:
        raise ValueError("need r_inner < r_outer")
    if len(path) == 0:
        raise ValueError("empty path")
    states = _radius_states(path, z, r_inner, r_outer)
    marks = states[states != 0]
    if len(marks) == 0:
        return 0
    # collapse runs, then count adjacent transitions
    changed = np.empty(len(marks), dtype=bool)
    changed[0] = True
    changed[1:] = marks[1:] != marks[:-1]
    runs = marks[changed]
    if reverse:
        return int(((runs[:-1] == 1) & (runs[1:] == 2)).sum())
    return int(((runs[:-1] == 2) & (runs[1:] == 1)).sum())


def truncate_at_radius(path, z, stop_radius):
    """Path prefix up to (and including) the first point beyond stop_radius.

    Used to impose an explicit stopping rule on the excursion counts; the
    full path is used when it never leaves the stopping disk.
    """
    path = np.asarray(path, dtype=np.int64)
    dx = path[:, 0] - int(z[0])
    dy = path[:, 1] - int(z[1])
    out = dx * dx + dy * dy > stop_radius * stop_radius
    if out.any():
        return path[: int(np.argmax(out)) + 1]
    return path


@dataclass
class LevelDiagnostic:
    k: int
    r_outer: float
    r_inner: float
    observed: int
    reference: float
    tolerance: int
    passed: bool


@dataclass
class SuccessReport:
    center: tuple
    schedule_kind: str
    gamma: float
    levels: list
    successful: bool
    stop_radius: float = None

    def to_json(self):
        return json.dumps(
            {
                "center": list(self.center),
                "schedule_kind": self.schedule_kind,
                "gamma": self.gamma,
                "stop_radius": self.stop_radius,
                "successful": self.successful,
                "levels": [
                    {
                        "k": lv.k,
                        "r_outer": lv.r_outer,
                        "r_inner": lv.r_inner,
                        "observed": lv.observed,
                        "reference": lv.reference,
                        "tolerance": lv.tolerance,
                        "passed": lv.passed,
                    }
                    for lv in self.levels
                ],
            }
        )


def successful_diagnostic(record, z, schedule, gamma=None, stop_radius=None, references=None):
    """Per-level check |N_k - reference_k| <= k over a radius ladder.

    N_k counts excursions from the circle of radius r_k inward to radius
    r_(k-1) around z on the recorded path (optionally truncated at the
    first exit of D(z, stop_radius)).  The reference defaults to the
    rescaled ladder count with the schedule's (or an overriding) gamma;
    an explicit `references` list replaces it level by level.  Levels are
    indexed from k = 2 (the first annulus with a positive reference).
    """
    if record.path is None:
        raise ValueError("record has no retained path; rerun with keep_path=True")
    if schedule.levels < 3:
        raise ValueError("schedule needs at least 3 levels")
    gamma = schedule.gamma if gamma is None else gamma
    path = record.path
    if stop_radius is not None:
        path = truncate_at_radius(path, z, stop_radius)
    levels = []
    ok = True
    for k in range(2, schedule.levels + 1):
        r_out = schedule.radii[k - 1]
        r_in = schedule.radii[k - 2]
        obs = count_excursions(path, z, r_out, r_in)
        if references is not None:
            ref = references[k - 2]
        else:
            ref = 6.0 * gamma**2 * schedule.alpha * k**2 * math.log(k)
        passed = abs(obs - ref) <= k
        ok = ok and passed
        levels.append(
            LevelDiagnostic(
                k=k,
                r_outer=float(r_out),
                r_inner=float(r_in),
                observed=obs,
                reference=float(ref),
                tolerance=k,
                passed=bool(passed),
            )
        )
    return SuccessReport(
        center=(int(z[0]), int(z[1])),
        schedule_kind=schedule.kind,
        gamma=gamma,
        levels=levels,
        successful=ok,
        stop_radius=stop_radius,
    )
