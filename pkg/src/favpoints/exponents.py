"""Closed-form pair-count exponents and their variational representations.

rho2(alpha, beta) is the almost-sure power-growth exponent of the number
of ordered alpha-favorite pairs within distance n^beta; rho2_hat is the
expectation version.  Each has a piecewise closed form and an equivalent
optimization form over the rate function F; the two routes check each
other numerically.
"""

from math import sqrt

import numpy as np


def F(h, beta, gamma):
    """Rate function F_{h,beta}(gamma) = gamma^2 (1-beta) + (h/beta)(1 - gamma(1-beta))^2."""
    if not 0 < beta < 1:
        raise ValueError("beta must lie in (0, 1)")
    if gamma < 0 or h < 0:
        raise ValueError("gamma and h must be >= 0")
    return gamma * gamma * (1 - beta) + (h / beta) * (1 - gamma * (1 - beta)) ** 2


def rho2(alpha, beta):
    """Almost-sure pair exponent, piecewise in (alpha, beta).

    First branch 2 + 2*beta - 4*alpha/(2 - beta) for beta <= 2(1 - sqrt(alpha)),
    second branch 8(1 - sqrt(alpha)) - 4(1 - sqrt(alpha))^2 / beta above it.
    The branches agree on the branch curve.
    """
    _check(alpha, beta)
    u = 1 - sqrt(alpha)
    if beta <= 2 * u:
        return 2 + 2 * beta - 4 * alpha / (2 - beta)
    return 8 * u - 4 * u * u / beta


def rho2_hat(alpha, beta):
    """Expected-count pair exponent; same first branch, flat 6 - 4*sqrt(2*alpha) above."""
    _check(alpha, beta)
    s = sqrt(2 * alpha)
    if beta <= 2 - s:
        return 2 + 2 * beta - 4 * alpha / (2 - beta)
    return 6 - 4 * s


def rho2_variational(alpha, beta, tol=1e-9):
    """rho2 as 2 + 2*beta - 2*alpha * inf F_{2,beta}(gamma) over alpha*gamma^2 <= 1.

    F_{2,beta} is strictly convex in gamma, so the infimum over
    [0, 1/sqrt(alpha)] is found by golden section; a coarse grid scan
    guards the unimodality assumption.
    """
    _check(alpha, beta)
    hi = 1 / sqrt(alpha)
    g = lambda x: F(2.0, beta, x)
    gmin = _golden_min(g, 0.0, hi, tol)
    gs = np.linspace(0.0, hi, 10_001)
    grid = float(np.min(gs * gs * (1 - beta) + (2.0 / beta) * (1 - gs * (1 - beta)) ** 2))
    return 2 + 2 * beta - 2 * alpha * min(gmin, grid)


def rho2_variational_argmin(alpha, beta, tol=1e-9):
    """The minimizing gamma of the constrained problem (for KKT checks)."""
    _check(alpha, beta)
    hi = 1 / sqrt(alpha)
    x = _golden_argmin(lambda g: F(2.0, beta, g), 0.0, hi, tol)
    return x


def rho2_hat_variational(alpha, beta, tol=1e-9):
    """rho2_hat as sup over beta' <= beta of the unconstrained inner optimum.

    The inner minimization of F_{2,beta'} in gamma has the closed form
    value 2/(2 - beta') at gamma = 2/(2 - beta'), leaving the concave
    outer problem sup_{beta' in (0, beta]} 2 + 2*beta' - 4*alpha/(2 - beta').
    """
    _check(alpha, beta)
    inner = lambda bp: 2 + 2 * bp - 4 * alpha / (2 - bp)
    lo = tol
    val = -_golden_min(lambda bp: -inner(bp), lo, beta, tol)
    bps = np.linspace(lo, beta, 10_001)
    grid = float(np.max(2 + 2 * bps - 4 * alpha / (2 - bps)))
    return max(val, grid, inner(beta))


def rho2_hat_variational_argmax(alpha, beta, tol=1e-9):
    """The maximizing beta' (should equal min(beta, 2 - sqrt(2*alpha)))."""
    _check(alpha, beta)
    inner = lambda bp: 2 + 2 * bp - 4 * alpha / (2 - bp)
    return _golden_argmin(lambda bp: -inner(bp), tol, beta, tol)


def _check(alpha, beta):
    if not 0 < alpha < 1:
        raise ValueError("alpha must lie in (0, 1)")
    if not 0 < beta < 1:
        raise ValueError("beta must lie in (0, 1)")


_INVPHI = (sqrt(5) - 1) / 2


def _golden_argmin(f, a, b, tol):
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = f(d)
    return (a + b) / 2


def _golden_min(f, a, b, tol):
    x = _golden_argmin(f, a, b, tol)
    # endpoints matter when the minimizer sits on the constraint boundary
    return min(f(x), f(a), f(b))
