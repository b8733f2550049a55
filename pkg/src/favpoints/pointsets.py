"""Special point sets of walks and fields, and close-tuple counting.

Extraction is exact thresholding: favorite points by local-time level,
late points by first-hitting time on the torus, high points by squared
field value.  Tuple counting follows the ordered-with-repetition
convention (the diagonal is included by default) and uses a grid-bucket
spatial index; an exhaustive counter lives in the test suite as the
independent oracle.
"""

from dataclasses import dataclass
from math import ceil, log, pi, sqrt

import numpy as np

from . import walk as walk_mod


@dataclass
class PointSet:
    kind: str  # favorite | truncated-favorite | late | high
    n: int
    alpha: float
    members: np.ndarray  # (m, 2) int64
    threshold_used: float
    torus: bool = False

    def __post_init__(self):
        self.members = np.asarray(self.members, dtype=np.int64).reshape(-1, 2)

    @property
    def size(self):
        return len(self.members)

    def as_set(self):
        return {(int(x), int(y)) for x, y in self.members}


@dataclass
class PairCountReport:
    n: int
    alpha: float
    beta: float
    j: int
    count: int
    set_size: int
    kind: str = ""
    ordered_with_diagonal: bool = True


@dataclass
class ExponentFit:
    points: list  # (log n, log count)
    slope: float
    intercept: float
    stderr: float
    excluded_zero: bool = False


def favorite_threshold(n, alpha):
    return ceil(4 * alpha / pi * log(n) ** 2)


def favorite_points(record, alpha, truncated=False):
    """Points of a disk walk with K(tau_n, .) >= ceil((4 alpha/pi)(log n)^2).

    The truncated variant additionally caps the local time at
    (4/pi)(log n)^2, the asymptotic maximum level.
    """
    if not 0 < alpha < 1:
        raise ValueError("alpha must lie in (0, 1)")
    n = record.radius
    if n < 3:
        raise ValueError("need n >= 3 so the threshold is at least 1")
    thr = favorite_threshold(n, alpha)
    cap = 4 / pi * log(n) ** 2
    if record.counts is not None:
        mask = record.counts >= thr
        if truncated:
            mask &= record.counts <= cap
        xs, ys = np.nonzero(mask)
        members = np.column_stack([xs - record.offset, ys - record.offset])
    else:
        pts = [
            p
            for p, c in record.sparse_counts.items()
            if c >= thr and (not truncated or c <= cap)
        ]
        members = np.array(sorted(pts), dtype=np.int64).reshape(-1, 2)
    return PointSet(
        kind="truncated-favorite" if truncated else "favorite",
        n=n,
        alpha=alpha,
        members=members,
        threshold_used=thr,
    )


def late_points(record, alpha):
    """Torus sites with T_x / (n log n)^2 >= 4 alpha / pi.

    Sites never hit (possible in fixed-horizon mode) carry T_x = infinity
    and always qualify.
    """
    if not 0 < alpha < 1:
        raise ValueError("alpha must lie in (0, 1)")
    n = record.side
    thr = 4 * alpha / pi * (n * log(n)) ** 2
    unhit = record.hits < 0
    mask = unhit | (record.hits >= thr)
    xs, ys = np.nonzero(mask)
    return PointSet(
        kind="late",
        n=n,
        alpha=alpha,
        members=np.column_stack([xs, ys]),
        threshold_used=thr,
        torus=True,
    )


def high_points(sample, alpha):
    """Field sites with phi(x)^2 / 2 >= (4 alpha / pi)(log n)^2."""
    if not 0 < alpha < 1:
        raise ValueError("alpha must lie in (0, 1)")
    n = sample.side
    thr = 4 * alpha / pi * log(n) ** 2
    mask = sample.field**2 / 2.0 >= thr
    xs, ys = np.nonzero(mask)
    return PointSet(
        kind="high",
        n=n,
        alpha=alpha,
        members=np.column_stack([xs, ys]),
        threshold_used=thr,
    )


def tuple_count(pset, beta, j=2, include_diagonal=True):
    """Count ordered j-tuples of set members with all pairwise d <= n^beta.

    Repetition is allowed, matching the Cartesian-power set-builder; with
    include_diagonal=False the count is restricted to tuples of pairwise
    distinct points.  Planar sets use a grid-bucket index; torus sets use
    the minimal wrapped Euclidean distance (vectorized exhaustive scan,
    adequate at torus scales).
    """
    if not 0 < beta < 1:
        raise ValueError("beta must lie in (0, 1)")
    if j < 2:
        raise ValueError("j must be >= 2")
    cutoff = float(pset.n) ** beta
    pts = pset.members
    if pset.size == 0:
        count = 0
    elif pset.torus:
        count = _tuple_count_torus(pts, cutoff, j, pset.n, include_diagonal)
    elif j == 2:
        count = _pair_count_grid(pts, cutoff)
        if not include_diagonal:
            count -= len(pts)
    else:
        count = _tuple_count_grid(pts, cutoff, j, include_diagonal)
    return PairCountReport(
        n=pset.n,
        alpha=pset.alpha,
        beta=beta,
        j=j,
        count=int(count),
        set_size=pset.size,
        kind=pset.kind,
        ordered_with_diagonal=include_diagonal,
    )


def _grid_buckets(pts, cutoff):
    """Sort points into square cells of side `cutoff`; return bucket layout."""
    cell = np.floor(pts / cutoff).astype(np.int64)
    cell -= cell.min(axis=0)
    width = int(cell[:, 1].max()) + 2
    key = cell[:, 0] * width + cell[:, 1]
    order = np.argsort(key, kind="stable")
    skey = key[order]
    ukey, start, cnt = np.unique(skey, return_index=True, return_counts=True)
    return pts[order], ukey, start, cnt, width


_PAIR_CHUNK = 1 << 24


def _pair_count_grid(pts, cutoff):
    """Ordered pair count (diagonal included) via 9-offset cell matching."""
    spts, ukey, start, cnt, width = _grid_buckets(pts, cutoff)
    c2 = cutoff * cutoff
    px = spts[:, 0].astype(np.float64)
    py = spts[:, 1].astype(np.float64)
    total = 0
    for ox in (-1, 0, 1):
        for oy in (-1, 0, 1):
            tkey = ukey + ox * width + oy
            jpos = np.searchsorted(ukey, tkey)
            jpos_c = np.clip(jpos, 0, len(ukey) - 1)
            valid = ukey[jpos_c] == tkey
            if not valid.any():
                continue
            a_start, a_cnt = start[valid], cnt[valid]
            b_start, b_cnt = start[jpos_c[valid]], cnt[jpos_c[valid]]
            sizes = a_cnt * b_cnt
            offs = np.cumsum(sizes)
            grand = int(offs[-1])
            lo = 0
            while lo < grand:
                hi = min(lo + _PAIR_CHUNK, grand)
                idx = np.arange(lo, hi, dtype=np.int64)
                grp = np.searchsorted(offs, idx, side="right")
                base = idx - (offs[grp] - sizes[grp])
                ai = a_start[grp] + base // b_cnt[grp]
                bi = b_start[grp] + base % b_cnt[grp]
                dx = px[ai] - px[bi]
                dy = py[ai] - py[bi]
                total += int((dx * dx + dy * dy <= c2).sum())
                lo = hi
    return total


def _neighbor_lists(pts, cutoff):
    """Per-point sorted index arrays of all set points within cutoff (incl self).

    Indices refer to the grid-sorted copy of the point array, which is
    returned alongside; a relabeling leaves tuple counts unchanged.
    """
    spts, ukey, start, cnt, width = _grid_buckets(pts, cutoff)
    m = len(spts)
    c2 = cutoff * cutoff
    cell = np.floor(spts / cutoff).astype(np.int64)
    cell -= cell.min(axis=0)
    nbrs = []
    for i in range(m):
        cands = []
        for ox in (-1, 0, 1):
            for oy in (-1, 0, 1):
                tkey = (cell[i, 0] + ox) * width + (cell[i, 1] + oy)
                p = np.searchsorted(ukey, tkey)
                if p < len(ukey) and ukey[p] == tkey:
                    cands.append(np.arange(start[p], start[p] + cnt[p]))
        cands = np.concatenate(cands) if cands else np.empty(0, dtype=np.int64)
        d = spts[cands] - spts[i]
        close = cands[(d[:, 0] ** 2 + d[:, 1] ** 2) <= c2]
        nbrs.append(np.sort(close))
    return spts, nbrs


def _tuple_count_grid(pts, cutoff, j, include_diagonal):
    """Ordered j-tuples with all pairwise distances <= cutoff, by clique DFS.

    Counts tuples over the *sorted* copy of the set (a relabeling, so the
    count is unchanged).  Each unordered clique of distinct points is
    expanded to its ordered arrangements; repetition handled separately.
    """
    spts, nbrs = _neighbor_lists(pts, cutoff)
    m = len(spts)

    # count ordered tuples directly by DFS over common-neighbor sets;
    # with repetition allowed each slot ranges over the running intersection
    def count_from(cands, depth):
        if depth == j:
            return 1
        total = 0
        for p in cands:
            total += count_from(np.intersect1d(cands, nbrs[p]), depth + 1)
        return total

    if include_diagonal:
        return count_from(np.arange(m), 0)
    # distinct points: same DFS but remove used indices
    def count_distinct(cands, depth):
        if depth == j:
            return 1
        total = 0
        for p in cands:
            rest = np.intersect1d(cands, nbrs[p])
            rest = rest[rest != p]
            total += count_distinct(rest, depth + 1)
        return total

    return count_distinct(np.arange(m), 0)


def _tuple_count_torus(pts, cutoff, j, side, include_diagonal):
    """Wrapped-metric tuple count via the boolean closeness matrix."""
    d = np.abs(pts[:, None, :] - pts[None, :, :]).astype(np.float64)
    d = np.minimum(d, side - d)
    close = (d**2).sum(axis=2) <= cutoff * cutoff
    return _count_tuples_from_matrix(close, j, include_diagonal)


def _count_tuples_from_matrix(close, j, include_diagonal):
    m = close.shape[0]
    if j == 2:
        c = int(close.sum())
        return c if include_diagonal else c - m
    idx = np.arange(m)

    def rec(cands, chosen, depth):
        if depth == j:
            return 1
        total = 0
        for p in cands:
            if not include_diagonal and p in chosen:
                continue
            nxt = cands[close[p, cands]]
            total += rec(nxt, chosen + (p,), depth + 1)
        return total

    return rec(idx, (), 0)


def exponent_fit(series):
    """OLS of log count on log n over >= 3 scales.

    Zero counts are excluded (flagged in the result); at least 3 positive
    scales must remain.
    """
    series = [(float(n), float(c)) for n, c in series]
    excluded = any(c <= 0 for _, c in series)
    series = [(n, c) for n, c in series if c > 0]
    if len(series) < 3:
        raise ValueError("need at least 3 scales with positive counts")
    x = np.log([n for n, _ in series])
    y = np.log([c for _, c in series])
    xm = x - x.mean()
    slope = float((xm * y).sum() / (xm * xm).sum())
    intercept = float(y.mean() - slope * x.mean())
    resid = y - (intercept + slope * x)
    dof = len(x) - 2
    if dof > 0:
        s2 = float((resid**2).sum() / dof)
    else:
        s2 = 0.0
    stderr = sqrt(s2 / float((xm * xm).sum()))
    return ExponentFit(
        points=list(zip(x.tolist(), y.tolist())),
        slope=slope,
        intercept=intercept,
        stderr=stderr,
        excluded_zero=excluded,
    )


def pair_membership_mc(n, x, xp, alpha, trials, seed, batch=25_000):
    """Monte Carlo estimate of P(x, x' both alpha-favorite in D(0, n)).

    Walkers are stepped synchronously in batches, tracking only the visit
    counts at x and x'; stragglers past the synchronous phase finish one
    at a time.  Returns (p_hat, binomial standard error).
    """
    at = ceil(4 * alpha / pi * log(n) ** 2)
    return pair_visits_mc(n, x, xp, at, trials, seed, batch=batch)


def pair_visits_mc(n, x, xp, threshold, trials, seed, batch=25_000):
    """P(K(tau_n, x) >= threshold and K(tau_n, x') >= threshold), by simulation."""
    x = (int(x[0]), int(x[1]))
    xp = (int(xp[0]), int(xp[1]))
    n2 = n * n
    rng = walk_mod.stream(seed, 0)
    successes = 0
    done = 0
    dx_tab = np.array([1, -1, 0, 0], dtype=np.int64)
    dy_tab = np.array([0, 0, 1, -1], dtype=np.int64)
    while done < trials:
        b = min(batch, trials - done)
        px = np.zeros(b, dtype=np.int64)
        py = np.zeros(b, dtype=np.int64)
        cx = np.zeros(b, dtype=np.int64)
        cy = np.zeros(b, dtype=np.int64)
        if x == (0, 0):
            cx += 1
        if xp == (0, 0):
            cy += 1
        # synchronous phase
        while len(px) > 64:
            c = rng.integers(0, 4, size=len(px))
            px = px + dx_tab[c]
            py = py + dy_tab[c]
            cx += (px == x[0]) & (py == x[1])
            cy += (px == xp[0]) & (py == xp[1])
            out = px * px + py * py > n2
            if out.any():
                successes += int(((cx >= threshold) & (cy >= threshold))[out].sum())
                keep = ~out
                px, py, cx, cy = px[keep], py[keep], cx[keep], cy[keep]
        # stragglers, block-stepped one walker at a time
        for i in range(len(px)):
            sx, sy, kx, ky = int(px[i]), int(py[i]), int(cx[i]), int(cy[i])
            while True:
                c = rng.integers(0, 4, size=4096)
                xs = sx + np.cumsum(dx_tab[c])
                ys = sy + np.cumsum(dy_tab[c])
                out = xs * xs + ys * ys > n2
                if out.any():
                    k = int(np.argmax(out))
                    xs, ys = xs[: k + 1], ys[: k + 1]
                    kx += int(((xs == x[0]) & (ys == x[1])).sum())
                    ky += int(((xs == xp[0]) & (ys == xp[1])).sum())
                    break
                kx += int(((xs == x[0]) & (ys == x[1])).sum())
                ky += int(((xs == xp[0]) & (ys == xp[1])).sum())
                sx, sy = int(xs[-1]), int(ys[-1])
            successes += int(kx >= threshold and ky >= threshold)
        done += b
    p = successes / trials
    sigma = sqrt(max(p * (1 - p), 1.0 / trials) / trials)
    return p, sigma
