"""Discrete Gaussian free field on a square box with zero boundary.

The covariance is the killed-walk Green matrix of the box (expected
visit counts of simple random walk absorbed on leaving the box), so the
variance at a bulk site grows like (2/pi) log n and the field's
(4 alpha / pi)(log n)^2 high-point thresholds live on the same scale as
the walk's favorite-point thresholds.
"""

import json
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from . import walk as walk_mod
from .potential import square_domain

_DENSE_LIMIT = 128


@dataclass
class CovarianceFactor:
    side: int
    L: np.ndarray  # lower-triangular Cholesky factor of the Green matrix
    green: np.ndarray  # (m, m) Green matrix over interior sites

    @property
    def m(self):
        return self.side * self.side

    def green_at(self, p, q):
        dom = square_domain(self.side)
        return float(self.green[dom.index(p), dom.index(q)])


@dataclass
class GFFSample:
    side: int
    seed: int
    field: np.ndarray  # (side, side), zero outside by convention

    def value(self, x, y):
        return float(self.field[x, y])


def build_covariance(n):
    """Assemble and factor the box Green matrix (dense, n <= 128).

    G = (I - P)^(-1) with P the interior-to-interior transition kernel;
    the factorization is checked to reconstruct G to 1e-8 max error.
    """
    if n < 1:
        raise ValueError("side must be >= 1")
    if n > _DENSE_LIMIT:
        raise ValueError(f"dense factorization supported only for n <= {_DENSE_LIMIT}")
    dom = square_domain(n)
    A = dom._system().toarray()
    green = np.linalg.inv(A)
    green = 0.5 * (green + green.T)
    L = scipy.linalg.cholesky(green, lower=True)
    resid = np.abs(L @ L.T - green).max()
    if resid > 1e-8:
        raise RuntimeError(f"Cholesky residual {resid:.3e} exceeds 1e-8")
    return CovarianceFactor(side=n, L=L, green=green)


def sample(factor, seed, rng=None):
    """Draw one field: L times a vector of independent standard normals."""
    if rng is None:
        rng = walk_mod.stream(seed)
    z = rng.standard_normal(factor.m)
    phi = factor.L @ z
    dom = square_domain(factor.side)
    grid = np.zeros((factor.side, factor.side))
    grid[dom.sites[:, 0], dom.sites[:, 1]] = phi
    return GFFSample(side=factor.side, seed=int(seed), field=grid)


def sample_many(factor, seed, count):
    """Draw `count` fields from one stream; returns (count, side, side)."""
    rng = walk_mod.stream(seed)
    z = rng.standard_normal((factor.m, count))
    phi = factor.L @ z
    dom = square_domain(factor.side)
    out = np.zeros((count, factor.side, factor.side))
    out[:, dom.sites[:, 0], dom.sites[:, 1]] = phi.T
    return out


def write_sample(s, path_base):
    """Serialize: flat little-endian float64 rows at <base>.bin, JSON header at <base>.json."""
    s.field.astype("<f8").tofile(f"{path_base}.bin")
    with open(f"{path_base}.json", "w") as fh:
        json.dump({"n": s.side, "seed": s.seed}, fh)


def read_sample(path_base):
    with open(f"{path_base}.json") as fh:
        head = json.load(fh)
    n = head["n"]
    data = np.fromfile(f"{path_base}.bin", dtype="<f8").reshape(n, n)
    return GFFSample(side=n, seed=head["seed"], field=data)
