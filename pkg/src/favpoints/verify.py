"""Verification suites wrapping each module's invariant battery.

Each suite returns a machine-readable verdict dict; the CLI writes it to
verdict.json and exits nonzero on failure.  The heavy acceptance-scale
versions of these checks live in the test suite; the suites here are
sized to run in seconds to a couple of minutes.
"""

import numpy as np

from . import exponents, gff, occupation, potential, walk

SUITES = ("combinatorics", "potential", "exponents", "gff", "walk")


def _verdict(suite, checks):
    return {
        "suite": suite,
        "passed": all(c["passed"] for c in checks),
        "checks": checks,
    }


def verify_combinatorics(max_total=12, n_chains=5, seed=7):
    """Exact oracle equality for every (n1, n2, end) with n1 + n2 <= max_total."""
    rng = np.random.default_rng(seed)
    cases = 0
    mismatches = 0
    for _ in range(n_chains):
        chain = occupation.random_rational_chain(rng)
        for total in range(2, max_total + 1):
            for n1 in range(1, total):
                n2 = total - n1
                for end in (1, 2):
                    q = occupation.OccupationQuery(n1=n1, n2=n2, end_state=end)
                    if occupation.occupation_probability(chain, q) != occupation.brute_force(
                        chain, q
                    ):
                        mismatches += 1
                    cases += 1
    checks = [
        {
            "name": "closed-form equals enumeration (exact rationals)",
            "passed": mismatches == 0,
            "detail": f"{cases} cases, {mismatches} mismatches",
        }
    ]
    return _verdict("combinatorics", checks)


def verify_exponents(grid=50):
    """Piecewise-vs-variational agreement and ordering on a grid."""
    vals = [(i + 1) / (grid + 1) for i in range(grid)]
    max_d = max_dh = 0.0
    ordering_ok = True
    for a in vals:
        for b in vals:
            r = exponents.rho2(a, b)
            rv = exponents.rho2_variational(a, b)
            h = exponents.rho2_hat(a, b)
            hv = exponents.rho2_hat_variational(a, b)
            max_d = max(max_d, abs(r - rv))
            max_dh = max(max_dh, abs(h - hv))
            ordering_ok = ordering_ok and h >= r - 1e-12
    jumps = []
    for a in (0.04, 0.25, 0.64):
        b = 2 * (1 - a**0.5)
        if 0 < b < 1:
            jumps.append(
                abs(exponents.rho2(a, min(b, 1 - 1e-12)) - (6 * (1 - a**0.5)))
            )
    for a in (0.5, 0.72, 0.9):
        b = 2 - (2 * a) ** 0.5
        if 0 < b < 1:
            jumps.append(abs(exponents.rho2_hat(a, b) - (6 - 4 * (2 * a) ** 0.5)))
    checks = [
        {
            "name": f"rho2 piecewise vs variational on {grid}x{grid} grid",
            "passed": max_d <= 1e-6,
            "detail": f"max |diff| = {max_d:.3e}",
        },
        {
            "name": f"rho2_hat piecewise vs variational on {grid}x{grid} grid",
            "passed": max_dh <= 1e-6,
            "detail": f"max |diff| = {max_dh:.3e}",
        },
        {
            "name": "rho2_hat >= rho2 everywhere on the grid",
            "passed": ordering_ok,
            "detail": "",
        },
        {
            "name": "branch-curve continuity",
            "passed": all(j <= 1e-9 for j in jumps),
            "detail": f"max jump = {max(jumps):.3e}",
        },
    ]
    return _verdict("exponents", checks)


def verify_walk(seeds=1000, n=32, master_seed=0):
    """Conservation and exit-geometry checks over many seeds."""
    conservation = boundary = 0
    for s in range(seeds):
        rec = walk.simulate_disk_walk(n, master_seed, rng=walk.stream(master_seed, s))
        if rec.total_visits() != rec.exit_time + 1:
            conservation += 1
        ex, ey = rec.exit_point
        r = (ex * ex + ey * ey) ** 0.5
        if not (n < r <= n + 1):
            boundary += 1
    checks = [
        {
            "name": f"sum K = tau + 1 over {seeds} seeds at n = {n}",
            "passed": conservation == 0,
            "detail": f"{conservation} violations",
        },
        {
            "name": "exit point on the outer boundary ring",
            "passed": boundary == 0,
            "detail": f"{boundary} violations",
        },
    ]
    return _verdict("walk", checks)


def verify_potential(n=40, pairs=20, seed=3):
    """Green symmetry/harmonicity, the exit-split reconstruction, monotone asymptotics."""
    rng = np.random.default_rng(seed)
    dom = potential.disk_domain(n)
    pts = dom.sites[rng.integers(0, dom.m, size=2 * pairs)]

    sym_err = 0.0
    for i in range(0, len(pts), 2):
        a, b = tuple(pts[i]), tuple(pts[i + 1])
        if a == b:
            continue
        sym_err = max(
            sym_err,
            abs(potential.green_function(n, a, b) - potential.green_function(n, b, a)),
        )

    g0 = dom.green_column((0, 0))
    harm_err = 0.0
    for i in range(min(dom.m, 500)):
        p = tuple(dom.sites[i])
        if p == (0, 0):
            continue
        avg = dom.neighbor_average(g0, p, boundary_value=0.0)
        harm_err = max(harm_err, abs(g0[i] - avg))

    recon_err = split_err = 0.0
    for i in range(0, len(pts), 2):
        a, b = tuple(pts[i]), tuple(pts[i + 1])
        if a == b:
            continue
        w = potential.w_matrix(n, a, b)
        p1, p2 = potential.two_point_exit_split(w)
        for row in range(2):
            recon_err = max(recon_err, abs(1 - (w.w[row, 0] * p1 + w.w[row, 1] * p2)))
        direct = potential.hitting_probability(n, a, [a, b], variant="return")
        split_err = max(split_err, abs(p1 - (1 - direct)))

    ns = (25, 50, 100, 200)
    rel = []
    for nn in ns:
        e = 1.0 / potential.green_function(nn, (0, 0), (0, 0))
        ea = potential.evaluate_asymptotic("escape", n=nn)
        rel.append(abs(e - ea) / e)
    mono = all(b < a for a, b in zip(rel, rel[1:]))

    checks = [
        {
            "name": "Green symmetry",
            "passed": sym_err <= 1e-10,
            "detail": f"max |G(x,y)-G(y,x)| = {sym_err:.3e}",
        },
        {
            "name": "harmonicity of the Green column away from its pole",
            "passed": harm_err <= 1e-10,
            "detail": f"max residual = {harm_err:.3e}",
        },
        {
            "name": "exit-split reconstruction of the two-point system",
            "passed": recon_err <= 1e-10,
            "detail": f"max residual = {recon_err:.3e}",
        },
        {
            "name": "exit split agrees with the direct absorbing solve",
            "passed": split_err <= 1e-10,
            "detail": f"max |diff| = {split_err:.3e}",
        },
        {
            "name": "escape-probability asymptotic error monotone decreasing",
            "passed": mono,
            "detail": f"rel errors {['%.4f' % r for r in rel]}",
        },
    ]
    return _verdict("potential", checks)


def verify_gff(n=16, samples=4000, seed=11):
    """Factorization residual and empirical covariance at two fixed sites."""
    factor = gff.build_covariance(n)
    resid = float(np.abs(factor.L @ factor.L.T - factor.green).max())
    sym = float(np.abs(factor.green - factor.green.T).max())
    fields = gff.sample_many(factor, seed, samples)
    c = n // 2
    a_pt, b_pt = (c, c), (c, c + 2)
    va = fields[:, a_pt[0], a_pt[1]]
    vb = fields[:, b_pt[0], b_pt[1]]
    emp = float((va * vb).mean())
    g_ab = factor.green_at(a_pt, b_pt)
    g_aa = factor.green_at(a_pt, a_pt)
    g_bb = factor.green_at(b_pt, b_pt)
    se = float(np.sqrt((g_aa * g_bb + g_ab**2) / samples))
    checks = [
        {
            "name": "Cholesky reconstruction residual <= 1e-8",
            "passed": resid <= 1e-8,
            "detail": f"{resid:.3e}",
        },
        {
            "name": "Green matrix symmetric",
            "passed": sym <= 1e-10,
            "detail": f"{sym:.3e}",
        },
        {
            "name": "empirical covariance within 4 standard errors",
            "passed": abs(emp - g_ab) <= 4 * se,
            "detail": f"emp {emp:.4f} vs exact {g_ab:.4f} (se {se:.4f})",
        },
    ]
    return _verdict("gff", checks)


def verify(suite, **kwargs):
    if suite == "combinatorics":
        return verify_combinatorics(**kwargs)
    if suite == "potential":
        return verify_potential(**kwargs)
    if suite == "exponents":
        return verify_exponents(**kwargs)
    if suite == "gff":
        return verify_gff(**kwargs)
    if suite == "walk":
        return verify_walk(**kwargs)
    raise ValueError(f"unknown suite {suite!r}")
