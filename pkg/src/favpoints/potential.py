"""Exact lattice potential theory on finite domains.

Everything here is computed by linear solves on the killed walk: Green's
functions, hitting probabilities with explicit first-entry vs return
conventions, the two-point W-matrix and its exit-split, the reduced
3-state chain among (x, x', exit), and finite-n two-sided bounds on the
probability that a pair of points are both alpha-favorite.  Leading-order
asymptotic formulas are provided for comparison, never as substitutes.
"""

from dataclasses import dataclass
from functools import lru_cache
from math import ceil, log, pi

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

_DIRECT_LIMIT = 300  # disk radius up to which the Green factor is a direct LU

_NBRS = ((1, 0), (-1, 0), (0, 1), (0, -1))


class LatticeDomain:
    """A finite set of interior sites with the killed-walk linear algebra.

    The walk is killed on its first step outside the site set; the outer
    boundary is the set of exterior sites adjacent to an interior site.
    """

    def __init__(self, sites):
        sites = np.asarray(sites, dtype=np.int64)
        self.sites = sites
        self.m = len(sites)
        self._xmin = int(sites[:, 0].min())
        self._ymin = int(sites[:, 1].min())
        w = int(sites[:, 0].max()) - self._xmin + 1
        h = int(sites[:, 1].max()) - self._ymin + 1
        grid = -np.ones((w, h), dtype=np.int64)
        grid[sites[:, 0] - self._xmin, sites[:, 1] - self._ymin] = np.arange(self.m)
        self._grid = grid
        # (m, 4) neighbor index table, -1 = neighbor outside the domain
        nbr = np.full((self.m, 4), -1, dtype=np.int64)
        for k, (dx, dy) in enumerate(_NBRS):
            nx = sites[:, 0] + dx - self._xmin
            ny = sites[:, 1] + dy - self._ymin
            ok = (nx >= 0) & (nx < w) & (ny >= 0) & (ny < h)
            nbr[ok, k] = grid[nx[ok], ny[ok]]
        self.nbr = nbr
        self._factor = None

    def index(self, p):
        x, y = int(p[0]), int(p[1])
        ix, iy = x - self._xmin, y - self._ymin
        if 0 <= ix < self._grid.shape[0] and 0 <= iy < self._grid.shape[1]:
            return int(self._grid[ix, iy])
        return -1

    def contains(self, p):
        return self.index(p) >= 0

    def _system(self):
        rows, cols = np.nonzero(self.nbr >= 0)
        j = self.nbr[rows, cols]
        A = sp.eye(self.m, format="csr") - 0.25 * sp.csr_matrix(
            (np.ones(rows.size), (rows, j)), shape=(self.m, self.m)
        )
        return A.tocsc()

    def green_column(self, y):
        """G(., y): expected visits to each site before killing, per start site."""
        iy = self.index(y)
        if iy < 0:
            raise ValueError(f"{tuple(y)} is not an interior site")
        e = np.zeros(self.m)
        e[iy] = 1.0
        return self._solve(e)

    def _solve(self, b):
        if self.m <= (2 * _DIRECT_LIMIT + 1) ** 2:
            if self._factor is None:
                self._factor = spla.splu(self._system())
            return self._factor.solve(b)
        A = self._system()
        x, info = spla.cg(A, b, rtol=1e-13, atol=0.0, maxiter=50 * self.m)
        if info != 0:
            raise RuntimeError(f"CG failed to converge (info={info})")
        return x

    def dirichlet(self, absorbing, boundary_value=0.0):
        """Harmonic field with prescribed values on absorbing interior sites.

        `absorbing` maps interior points to fixed values; sites outside the
        domain carry `boundary_value`.  Returns the full field over
        self.sites with absorbing entries filled in.
        """
        fixed = np.full(self.m, np.nan)
        for p, v in absorbing.items():
            i = self.index(p)
            if i < 0:
                raise ValueError(f"absorbing point {tuple(p)} is outside the domain")
            fixed[i] = v
        free = np.isnan(fixed)
        fi = np.flatnonzero(free)
        pos = -np.ones(self.m, dtype=np.int64)
        pos[fi] = np.arange(fi.size)

        b = np.zeros(fi.size)
        rows_l, cols_l, vals_l = [], [], []
        for k in range(4):
            j = self.nbr[fi, k]
            outside = j < 0
            b[outside] += 0.25 * boundary_value
            inside = ~outside
            jj = j[inside]
            absorbed = ~free[jj]
            src = np.flatnonzero(inside)
            b[src[absorbed]] += 0.25 * fixed[jj[absorbed]]
            fr = src[~absorbed]
            rows_l.append(fr)
            cols_l.append(pos[jj[~absorbed]])
            vals_l.append(np.full(fr.size, -0.25))
        A = sp.eye(fi.size, format="csr") + sp.csr_matrix(
            (np.concatenate(vals_l), (np.concatenate(rows_l), np.concatenate(cols_l))),
            shape=(fi.size, fi.size),
        )
        u = spla.spsolve(A.tocsc(), b)
        field = fixed.copy()
        field[fi] = u
        return field

    def neighbor_average(self, field, p, absorbing=None, boundary_value=0.0):
        """Mean of the field over the 4 neighbors of p (return-time semantics).

        Neighbors outside the domain contribute boundary_value.  With
        T = inf{m >= 1} this is the one-step decomposition of a hitting
        probability started on an absorbing site.
        """
        x, y = int(p[0]), int(p[1])
        total = 0.0
        for dx, dy in _NBRS:
            q = (x + dx, y + dy)
            i = self.index(q)
            total += boundary_value if i < 0 else field[i]
        return total / 4.0


def _disk_sites(n):
    out = []
    for x in range(-n, n + 1):
        ymax = int((n * n - x * x) ** 0.5)
        while (ymax + 1) ** 2 + x * x <= n * n:  # guard float sqrt
            ymax += 1
        while ymax * ymax + x * x > n * n:
            ymax -= 1
        ys = np.arange(-ymax, ymax + 1)
        out.append(np.column_stack([np.full(ys.size, x), ys]))
    return np.concatenate(out)


@lru_cache(maxsize=6)
def disk_domain(n):
    """Interior of D(0, n) = {p : |p| <= n} with a cached solver."""
    if n < 1:
        raise ValueError("radius must be >= 1")
    return LatticeDomain(_disk_sites(int(n)))


@lru_cache(maxsize=6)
def square_domain(n):
    """The n x n box {0..n-1}^2 with zero exterior (used by the GFF sampler)."""
    if n < 1:
        raise ValueError("side must be >= 1")
    xs, ys = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
    return LatticeDomain(np.column_stack([xs.ravel(), ys.ravel()]))


def green_function(n, x, y):
    """Expected visits to y before exiting D(0, n), started at x (exact)."""
    dom = disk_domain(n)
    ix = dom.index(x)
    if ix < 0 or not dom.contains(y):
        raise ValueError("both points must lie in D(0, n)")
    return float(dom.green_column(y)[ix])


def hitting_probability(n, start, targets, variant="return"):
    """P^start(T_targets < tau_n) inside D(0, n), by exact linear solve.

    variant="first-entry" uses T = inf{m >= 0}, so the value is 1 when
    start is a target.  variant="return" (the default, matching the
    T_D = inf{m >= 1} convention) decomposes one step from the start.
    """
    targets = [tuple(map(int, t)) for t in targets]
    if not targets:
        raise ValueError("empty target set")
    if len(targets) > 2:
        raise ValueError("at most 2 target points")
    dom = disk_domain(n)
    if not dom.contains(start):
        raise ValueError("start must lie in D(0, n)")
    for t in targets:
        if not dom.contains(t):
            raise ValueError("targets must lie in D(0, n)")
    start = (int(start[0]), int(start[1]))
    if variant == "first-entry" and start in targets:
        return 1.0
    field = dom.dirichlet({t: 1.0 for t in targets}, boundary_value=0.0)
    if variant == "first-entry":
        return float(field[dom.index(start)])
    if variant != "return":
        raise ValueError(f"unknown variant {variant!r}")
    absorbed = {t: 1.0 for t in targets}
    # one-step decomposition; for start in targets, field value at start is
    # its absorbing value, which must not be read directly
    return float(
        dom.neighbor_average(
            _mask_absorbing(dom, field, absorbed), start, boundary_value=0.0
        )
    )


def _mask_absorbing(dom, field, absorbing):
    out = field.copy()
    for p, v in absorbing.items():
        out[dom.index(p)] = v
    return out


@dataclass
class WMatrix:
    """Expected mutual visits W[i][l] between two points before disk exit."""

    w: np.ndarray
    x1: tuple
    x2: tuple
    n: int

    def __post_init__(self):
        w = np.asarray(self.w, dtype=float)
        if w.shape != (2, 2):
            raise ValueError("W must be 2x2")
        self.w = w

    @property
    def det(self):
        return float(self.w[0, 0] * self.w[1, 1] - self.w[0, 1] * self.w[1, 0])


def w_matrix(n, x1, x2):
    """W_{i,l} = expected visits to x_l from x_i before exiting D(0, n).

    These are exactly the disk Green function values G(x_i, x_l); two
    linear solves with the shared factor produce the full matrix.
    """
    x1 = (int(x1[0]), int(x1[1]))
    x2 = (int(x2[0]), int(x2[1]))
    if x1 == x2:
        raise ValueError("points must be distinct")
    dom = disk_domain(n)
    if not (dom.contains(x1) and dom.contains(x2)):
        raise ValueError("both points must lie in D(0, n)")
    g1 = dom.green_column(x1)
    g2 = dom.green_column(x2)
    w = np.array(
        [
            [g1[dom.index(x1)], g2[dom.index(x1)]],
            [g1[dom.index(x2)], g2[dom.index(x2)]],
        ]
    )
    return WMatrix(w=w, x1=x1, x2=x2, n=n)


def two_point_exit_split(w):
    """Solve the 2x2 last-departure system for the exit-before-return split.

    Returns (p1, p2) with p_i = P^{x_i}(tau < T_{x1,x2}); the defining
    identities are 1 = W_{i,1} p1 + W_{i,2} p2.
    """
    det = w.det
    if det <= 0:
        raise ValueError("W matrix is singular or violates its invariants")
    p1 = float((w.w[1, 1] - w.w[0, 1]) / det)
    p2 = float((w.w[0, 0] - w.w[1, 0]) / det)
    return p1, p2


@dataclass
class TwoPointChain:
    """Reduced transition probabilities among (x, x', disk exit).

    b[i][l] for i in {0,1} (start x or x') and l in {0,1,2} = (x, x', exit),
    with return-time semantics: b[0][0] is the probability the walk from x
    returns to x before hitting x' or leaving D(0, n).
    """

    b: np.ndarray
    n: int
    x: tuple
    xp: tuple

    @property
    def log_distance_ratio(self):
        """s = log d(x, x') / log n."""
        d = ((self.x[0] - self.xp[0]) ** 2 + (self.x[1] - self.xp[1]) ** 2) ** 0.5
        return log(d) / log(self.n)


def two_point_chain(n, x, xp):
    """Build the (x, x', exit) reduced chain by two absorbing solves per row.

    Rows sum to 1 exactly by construction (the exit entry is the
    complement), and b[0][1] == b[1][0] up to solver tolerance by the
    time-reversal symmetry of simple random walk.
    """
    x = (int(x[0]), int(x[1]))
    xp = (int(xp[0]), int(xp[1]))
    if x == xp:
        raise ValueError("points must be distinct")
    dom = disk_domain(n)
    if not (dom.contains(x) and dom.contains(xp)):
        raise ValueError("both points must lie in D(0, n)")
    ux = dom.dirichlet({x: 1.0, xp: 0.0}, boundary_value=0.0)
    uxp = dom.dirichlet({x: 0.0, xp: 1.0}, boundary_value=0.0)
    b = np.zeros((2, 3))
    for i, p in enumerate((x, xp)):
        b[i, 0] = dom.neighbor_average(ux, p, boundary_value=0.0)
        b[i, 1] = dom.neighbor_average(uxp, p, boundary_value=0.0)
        b[i, 2] = 1.0 - b[i, 0] - b[i, 1]
    return TwoPointChain(b=b, n=n, x=x, xp=xp)


def first_before_second(n, x, xp, start=(0, 0)):
    """P^start(T_x < T_{x'} and T_x < tau_n), via a three-absorbing solve."""
    dom = disk_domain(n)
    field = dom.dirichlet({tuple(x): 1.0, tuple(xp): 0.0}, boundary_value=0.0)
    start = (int(start[0]), int(start[1]))
    if start in (tuple(x), tuple(xp)):
        masked = _mask_absorbing(dom, field, {tuple(x): 1.0, tuple(xp): 0.0})
        return float(dom.neighbor_average(masked, start, boundary_value=0.0))
    return float(field[dom.index(start)])


def alpha_tilde(n, alpha):
    """The favorite-point visit threshold ceil((4 alpha / pi) (log n)^2)."""
    return ceil(4 * alpha / pi * log(n) ** 2)


@dataclass
class PairBounds:
    lower: float
    upper: float
    alpha_tilde: int
    swapped: bool
    x: tuple
    xp: tuple
    n: int


def pair_favorite_bounds(n, x, xp, alpha):
    """Two-sided finite-n bounds on P(x, x' both alpha-favorite in D(0, n)).

    Lower bound: P(T_x < T_{x'} ^ tau_n) * b12 * (1/at^2) * P^x(T_{x,x'} < tau_n)^(2at-2),
    where at is the visit threshold.  Upper bound:
    max over y' in {x, x'} of P^{y'}(T_{x,x'} < tau_{2n})^(2at-1).
    Labels are swapped internally when the symmetrization preconditions
    would be violated; `swapped` reports whether that happened.
    """
    at = alpha_tilde(n, alpha)
    if at < 2:
        raise ValueError(f"alpha_tilde = {at} < 2: bound derivation degenerates")
    x = (int(x[0]), int(x[1]))
    xp = (int(xp[0]), int(xp[1]))
    if x == xp:
        raise ValueError("points must be distinct")

    p_x_first = first_before_second(n, x, xp)
    p_xp_first = first_before_second(n, xp, x)
    # label so the origin reaches x first with the larger probability
    swapped = p_xp_first > p_x_first
    if swapped:
        x, xp = xp, x
        p_x_first = p_xp_first

    chain = two_point_chain(n, x, xp)
    b11, b12 = chain.b[0, 0], chain.b[0, 1]
    lower = p_x_first * b12 * (1.0 / at**2) * (b11 + b12) ** (2 * at - 2)

    chain2 = two_point_chain(2 * n, x, xp)
    hit = max(1.0 - chain2.b[0, 2], 1.0 - chain2.b[1, 2])
    upper = hit ** (2 * at - 1)

    lower = min(lower, upper)  # both bound the same probability
    return PairBounds(
        lower=float(lower),
        upper=float(upper),
        alpha_tilde=at,
        swapped=bool(swapped),
        x=x,
        xp=xp,
        n=n,
    )


def evaluate_asymptotic(kind, **params):
    """Leading-order formula values with all correction terms dropped.

    kind="ring-hit": P^x(tau_r < tau_R) ~ log(R/|x|)/log(R/r); needs r, R,
    and either x (a point) or radius (|x|).
    kind="green":   expected visits to the origin before exiting D(0, n).
    kind="escape":  P(tau_n < T_0) ~ pi / (2 log n).
    """
    if kind == "ring-hit":
        r, R = params["r"], params["R"]
        if "radius" in params:
            ax = params["radius"]
        else:
            px = params["x"]
            ax = (px[0] ** 2 + px[1] ** 2) ** 0.5
        if not (0 < r < ax <= R):
            raise ValueError("need 0 < r < |x| <= R")
        return log(R / ax) / log(R / r)
    if kind == "green":
        npar = params["n"]
        if npar < 2:
            raise ValueError("n must be >= 2")
        px = params.get("x", (0, 0))
        ax = (px[0] ** 2 + px[1] ** 2) ** 0.5
        if ax == 0:
            return 2 / pi * log(npar)
        if ax > npar:
            raise ValueError("x must lie in D(0, n)")
        return 2 / pi * log(npar / ax)
    if kind == "escape":
        npar = params["n"]
        if npar < 2:
            raise ValueError("n must be >= 2")
        return pi / (2 * log(npar))
    raise ValueError(f"unknown asymptotic kind {kind!r}")


def comparison_rows(ns):
    """CSV-ready rows (n, x, y, quantity, exact, asymptotic, rel_err)."""
    rows = []
    for n in ns:
        g = green_function(n, (0, 0), (0, 0))
        ga = evaluate_asymptotic("green", n=n)
        rows.append((n, (0, 0), (0, 0), "green", g, ga, abs(g - ga) / g))
        e = 1.0 / g
        ea = evaluate_asymptotic("escape", n=n)
        rows.append((n, (0, 0), (0, 0), "escape", e, ea, abs(e - ea) / e))
    return rows
