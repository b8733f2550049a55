"""2D simple random walk engines.

Two stopping geometries are supported: the walk in the plane stopped on
first exit from the disk D(0, n) = {y : |y| <= n}, which produces a
local-time field K(tau_n, x), and the walk on the n x n torus run either
until every site is covered or for a fixed horizon, which produces the
first-hitting-time field T_x.

All randomness comes from counter-based Philox streams keyed by
(seed, stream index), so parallel trials are reproducible independently
of scheduling.
"""

import json
from dataclasses import dataclass, field

import numpy as np

STEP_CAP = 10**9
_BLOCK = 1 << 16
_DENSE_LIMIT = 4096

_DX = np.array([1, -1, 0, 0], dtype=np.int64)
_DY = np.array([0, 0, 1, -1], dtype=np.int64)


class StepCapExceeded(RuntimeError):
    """Raised when a walk fails to terminate within STEP_CAP steps."""


def stream(seed, index=0):
    """Return a numpy Generator for trial `index` of master `seed`.

    Distinct (seed, index) pairs give statistically independent streams,
    and the mapping is pure, so trial-level parallelism is deterministic.
    """
    return np.random.Generator(np.random.Philox(key=[np.uint64(seed), np.uint64(index)]))


@dataclass
class WalkRecord:
    """A disk-stopped walk: exit data plus the local-time field.

    `counts` is a dense (2n+3)x(2n+3) array of visit counts indexed by
    (x + offset, y + offset); for n > 4096 a sparse dict {(x, y): count}
    is used instead and `counts` is None.
    """

    radius: int
    seed: int
    exit_time: int
    exit_point: tuple
    counts: np.ndarray = None
    offset: int = 0
    sparse_counts: dict = None
    path: np.ndarray = None  # (exit_time + 1, 2) when retained

    def local_time(self, x, y):
        """Visit count K(tau_n, (x, y))."""
        if self.counts is not None:
            ix, iy = x + self.offset, y + self.offset
            if 0 <= ix < self.counts.shape[0] and 0 <= iy < self.counts.shape[1]:
                return int(self.counts[ix, iy])
            return 0
        return int(self.sparse_counts.get((x, y), 0))

    def items(self):
        """Yield ((x, y), count) over all visited points, lexicographically."""
        if self.counts is not None:
            xs, ys = np.nonzero(self.counts)
            order = np.lexsort((ys, xs))
            for i in order:
                yield (int(xs[i]) - self.offset, int(ys[i]) - self.offset), int(
                    self.counts[xs[i], ys[i]]
                )
        else:
            for k in sorted(self.sparse_counts):
                yield k, self.sparse_counts[k]

    def visited(self):
        """(m, 2) array of all points with positive local time."""
        if self.counts is not None:
            xs, ys = np.nonzero(self.counts)
            return np.column_stack([xs - self.offset, ys - self.offset])
        pts = sorted(self.sparse_counts)
        return np.array(pts, dtype=np.int64).reshape(-1, 2)

    def total_visits(self):
        if self.counts is not None:
            return int(self.counts.sum(dtype=np.int64))
        return sum(self.sparse_counts.values())

    def to_json(self):
        """Documented JSON form: local_time as [x, y, count] sorted lexicographically."""
        return json.dumps(
            {
                "radius": self.radius,
                "seed": self.seed,
                "exit_time": self.exit_time,
                "exit_point": list(self.exit_point),
                "local_time": [[x, y, c] for (x, y), c in self.items()],
            }
        )


@dataclass
class TorusRecord:
    """Torus walk record: first-hitting times of every site.

    `hits` is an (n, n) int64 array; -1 marks a site never hit.
    """

    side: int
    seed: int
    hits: np.ndarray
    total_steps: int
    covered: bool

    def hitting_time(self, x, y):
        """First-hit step T_(x,y), or None if the site was never hit."""
        t = int(self.hits[x % self.side, y % self.side])
        return None if t < 0 else t

    def to_json(self):
        return json.dumps(
            {
                "side": self.side,
                "seed": self.seed,
                "total_steps": self.total_steps,
                "covered": self.covered,
                "hitting_time": [
                    [int(x), int(y), int(self.hits[x, y])]
                    for x in range(self.side)
                    for y in range(self.side)
                    if self.hits[x, y] >= 0
                ],
            }
        )


def simulate_disk_walk(n, seed, keep_path=False, rng=None):
    """Run a simple random walk from the origin until it exits D(0, n).

    The walk stops at tau_n, the first step with Euclidean norm > n; the
    exit point lies on the outer boundary ring (norm in (n, n+1]).  The
    returned record satisfies sum_x K(tau_n, x) = tau_n + 1.

    Identical (n, seed) always reproduce the same record, and for a fixed
    seed the walk stopped at radius n is a prefix of the one stopped at
    any larger radius (the step stream does not depend on n).
    """
    if n < 1:
        raise ValueError("radius must be >= 1")
    if rng is None:
        rng = stream(seed)
    n2 = n * n
    dense = n <= _DENSE_LIMIT
    if dense:
        off = n + 1
        counts = np.zeros((2 * n + 3, 2 * n + 3), dtype=np.int64)
        counts[off, off] = 1
        sparse = None
    else:
        off = 0
        counts = None
        sparse = {(0, 0): 1}
    path_chunks = [np.zeros((1, 2), dtype=np.int64)] if keep_path else None

    x0 = y0 = 0
    t = 0
    while True:
        if t >= STEP_CAP:
            raise StepCapExceeded(f"no exit from D(0,{n}) within {STEP_CAP} steps")
        c = rng.integers(0, 4, size=_BLOCK)
        xs = x0 + np.cumsum(_DX[c])
        ys = y0 + np.cumsum(_DY[c])
        out = xs * xs + ys * ys > n2
        if out.any():
            k = int(np.argmax(out))
            xs, ys = xs[: k + 1], ys[: k + 1]
            if dense:
                np.add.at(counts, (xs + off, ys + off), 1)
            else:
                pts, reps = np.unique(np.column_stack([xs, ys]), axis=0, return_counts=True)
                for (px, py), r in zip(pts, reps):
                    key = (int(px), int(py))
                    sparse[key] = sparse.get(key, 0) + int(r)
            if keep_path:
                path_chunks.append(np.column_stack([xs, ys]))
            exit_time = t + k + 1
            exit_point = (int(xs[-1]), int(ys[-1]))
            break
        if dense:
            np.add.at(counts, (xs + off, ys + off), 1)
        else:
            pts, reps = np.unique(np.column_stack([xs, ys]), axis=0, return_counts=True)
            for (px, py), r in zip(pts, reps):
                key = (int(px), int(py))
                sparse[key] = sparse.get(key, 0) + int(r)
        if keep_path:
            path_chunks.append(np.column_stack([xs, ys]))
        x0, y0 = int(xs[-1]), int(ys[-1])
        t += _BLOCK

    path = np.concatenate(path_chunks) if keep_path else None
    return WalkRecord(
        radius=n,
        seed=int(seed),
        exit_time=exit_time,
        exit_point=exit_point,
        counts=counts,
        offset=off,
        sparse_counts=sparse,
        path=path,
    )


def simulate_torus_walk(n, seed, mode="until-covered", horizon=None, rng=None):
    """Run a simple random walk on the n x n torus from site (0, 0).

    mode="until-covered" stops at the step when the last unvisited site is
    first hit, so max_x T_x == total_steps and covered is True.
    mode="fixed-horizon" runs exactly `horizon` steps; covered may be False.
    """
    if n < 2:
        raise ValueError("torus side must be >= 2")
    if mode not in ("until-covered", "fixed-horizon"):
        raise ValueError(f"unknown mode {mode!r}")
    if mode == "fixed-horizon" and (horizon is None or horizon < 0):
        raise ValueError("fixed-horizon mode needs horizon >= 0")
    if rng is None:
        rng = stream(seed)

    hits = np.full(n * n, np.iinfo(np.int64).max, dtype=np.int64)
    hits[0] = 0
    x0 = y0 = 0
    t = 0
    while True:
        if mode == "fixed-horizon":
            remaining = horizon - t
            if remaining == 0:
                total = horizon
                break
            m = min(_BLOCK, remaining)
        else:
            if t >= STEP_CAP:
                raise StepCapExceeded(f"torus side {n} not covered within {STEP_CAP} steps")
            m = _BLOCK
        c = rng.integers(0, 4, size=m)
        xs = (x0 + np.cumsum(_DX[c])) % n
        ys = (y0 + np.cumsum(_DY[c])) % n
        flat = xs * n + ys
        np.minimum.at(hits, flat, np.arange(t + 1, t + m + 1, dtype=np.int64))
        x0, y0 = int(xs[-1]), int(ys[-1])
        t += m
        if mode == "until-covered":
            unfilled = int((hits == np.iinfo(np.int64).max).sum())
            if unfilled == 0:
                total = int(hits.max())
                break

    hits = hits.reshape(n, n)
    covered = not (hits == np.iinfo(np.int64).max).any()
    out = np.where(hits == np.iinfo(np.int64).max, -1, hits)
    return TorusRecord(side=n, seed=int(seed), hits=out, total_steps=int(total), covered=covered)


def max_local_time(record):
    """Return (point, count) attaining max_x K(tau_n, x).

    Ties are broken by lexicographic (x, y) order.
    """
    if record.counts is not None:
        m = int(record.counts.max())
        xs, ys = np.nonzero(record.counts == m)
        order = np.lexsort((ys, xs))
        i = order[0]
        return (int(xs[i]) - record.offset, int(ys[i]) - record.offset), m
    best = max(record.sparse_counts.values())
    pt = min(k for k, v in record.sparse_counts.items() if v == best)
    return pt, best
