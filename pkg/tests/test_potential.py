from math import e, log, pi

import numpy as np
import pytest

from favpoints import potential as pt


def test_green_radius_one_by_hand():
    # D(0,1) has 5 sites; from any neighbor of the origin three of the
    # four moves leave the disk, so the return probability is 4*(1/4)*(1/4)
    # and G(0,0) = 1/(1 - 1/4) = 4/3
    assert pt.green_function(1, (0, 0), (0, 0)) == pytest.approx(4 / 3, abs=1e-12)


def test_green_origin_growth_window():
    for n in (16, 64, 256):
        g = pt.green_function(n, (0, 0), (0, 0))
        assert 2 / pi * log(n) - 2 <= g <= 2 / pi * log(n) + 2


def test_green_off_origin_asymptotic():
    g = pt.green_function(50, (0, 0), (25, 0))
    assert abs(g - 2 / pi * log(2)) / g < 0.10


def test_green_symmetry_and_harmonicity():
    rng = np.random.default_rng(1)
    dom = pt.disk_domain(30)
    for _ in range(10):
        i, j = rng.integers(0, len(dom.sites), size=2)
        x = tuple(dom.sites[i])
        y = tuple(dom.sites[j])
        if x == y:
            continue
        gxy = pt.green_function(30, x, y)
        gyx = pt.green_function(30, y, x)
        assert abs(gxy - gyx) <= 1e-10
        # mean-value property away from the source, zero outside the disk
        col = dom.green_column(x)
        nbrs = [(y[0] + 1, y[1]), (y[0] - 1, y[1]), (y[0], y[1] + 1), (y[0], y[1] - 1)]
        avg = sum(col[dom.index(p)] if dom.contains(p) else 0.0 for p in nbrs) / 4
        assert abs(gxy - avg) <= 1e-10


def test_return_probability_identity():
    g = pt.green_function(50, (0, 0), (0, 0))
    p = pt.hitting_probability(50, (0, 0), [(0, 0)], variant="return")
    assert abs(p - (1 - 1 / g)) <= 1e-12


def test_escape_probability_trend():
    # P(tau_n < T_0) approaches pi/(2 log n) from above; the relative
    # deviation shrinks with n
    devs = []
    for n in (25, 50, 100, 200):
        exact = 1 - pt.hitting_probability(n, (0, 0), [(0, 0)], variant="return")
        asym = pi / (2 * log(n))
        devs.append(abs(exact - asym) / asym)
    assert all(a > b for a, b in zip(devs, devs[1:]))


def test_point_hitting_asymptotic_window():
    n = 64
    exact = pt.hitting_probability(n, (0, 0), [(32, 0)], variant="first-entry")
    lead = log(2) / log(n)
    assert 0.5 * lead < exact < 1.5 * lead


def test_w_matrix_symmetric_placement():
    w = pt.w_matrix(40, (9, 0), (-9, 0))
    assert w.w[0, 0] == pytest.approx(w.w[1, 1], abs=1e-10)
    assert w.w[0, 1] == pytest.approx(w.w[1, 0], abs=1e-10)
    assert w.det > 0


def test_w_matrix_invariants_random_pairs():
    rng = np.random.default_rng(5)
    dom = pt.disk_domain(30)
    for _ in range(15):
        i, j = rng.integers(0, len(dom.sites), size=2)
        x1, x2 = tuple(dom.sites[i]), tuple(dom.sites[j])
        if x1 == x2:
            continue
        w = pt.w_matrix(30, x1, x2)
        assert w.w[0, 1] < w.w[1, 1]
        assert w.w[1, 0] < w.w[0, 0]
        assert w.det > 0
        # 1 = W_{i,1} p1 + W_{i,2} p2 for both start rows
        p1, p2 = pt.two_point_exit_split(w)
        for i_row in (0, 1):
            resid = abs(w.w[i_row, 0] * p1 + w.w[i_row, 1] * p2 - 1)
            assert resid <= 1e-10


def test_exit_split_algebra():
    w = pt.WMatrix(w=np.array([[3.0, 0.0], [0.0, 5.0]]), x1=(1, 0), x2=(-1, 0), n=10)
    p1, p2 = pt.two_point_exit_split(w)
    assert p1 == pytest.approx(1 / 3)
    assert p2 == pytest.approx(1 / 5)
    w = pt.WMatrix(w=np.array([[4.0, 1.5], [1.5, 4.0]]), x1=(1, 0), x2=(-1, 0), n=10)
    p1, p2 = pt.two_point_exit_split(w)
    assert p1 == pytest.approx(1 / 5.5)
    assert p2 == pytest.approx(1 / 5.5)


def test_exit_split_vs_direct_solve():
    n, x1, x2 = 60, (10, 0), (-10, 0)
    w = pt.w_matrix(n, x1, x2)
    p1, _ = pt.two_point_exit_split(w)
    direct = 1 - pt.hitting_probability(n, x1, [x1, x2], variant="return")
    assert abs(p1 - direct) <= 1e-10


def test_two_point_chain_invariants():
    c = pt.two_point_chain(30, (3, 2), (-5, 7))
    assert np.allclose(c.b.sum(axis=1), 1.0, atol=1e-12)
    assert abs(c.b[0, 1] - c.b[1, 0]) <= 1e-10
    assert (c.b >= 0).all()


def test_two_point_chain_adjacent():
    c = pt.two_point_chain(10, (0, 0), (1, 0))
    assert c.b[0, 1] >= 0.25


def test_two_point_chain_symmetric_placement():
    c = pt.two_point_chain(30, (8, 0), (-8, 0))
    assert c.b[0, 0] == pytest.approx(c.b[1, 1], abs=1e-10)
    assert c.b[0, 2] == pytest.approx(c.b[1, 2], abs=1e-10)


def test_boundary_escape_rate():
    # b13 tracks pi/(2(2-s) log n) with s = log d(x,x') / log n
    c = pt.two_point_chain(60, (5, 0), (5, 8))
    s = c.log_distance_ratio
    pred = pi / (2 * (2 - s) * log(60))
    assert abs(c.b[0, 2] - pred) / pred <= 0.25


def test_pair_bounds_ordering_and_swap():
    n = 60
    alpha = 2 * pi / (4 * log(n) ** 2) * 1.0001  # alpha_tilde = 3
    b = pt.pair_favorite_bounds(n, (4, 0), (0, 4), alpha)
    assert b.alpha_tilde == 3
    assert 0 <= b.lower <= b.upper <= 1
    # swapping the arguments must give the same numbers
    b2 = pt.pair_favorite_bounds(n, (0, 4), (4, 0), alpha)
    assert b2.lower == pytest.approx(b.lower, rel=1e-12)
    assert b2.upper == pytest.approx(b.upper, rel=1e-12)


def test_pair_bounds_alpha_tilde_two_formula():
    n = 60
    alpha = pi / (4 * log(n) ** 2) * 1.2  # alpha_tilde = 2
    x, xp = (6, 0), (-6, 0)
    b = pt.pair_favorite_bounds(n, x, xp, alpha)
    assert b.alpha_tilde == 2
    c = pt.two_point_chain(n, x, xp)
    first = pt.first_before_second(n, x, xp)
    expect = first * c.b[0, 1] * 0.25 * (c.b[0, 0] + c.b[0, 1]) ** 2
    assert b.lower == pytest.approx(min(expect, b.upper), rel=1e-10)


def test_pair_bounds_degenerate_threshold():
    with pytest.raises(ValueError):
        pt.pair_favorite_bounds(60, (4, 0), (0, 4), 1e-6)


def test_alpha_tilde():
    assert pt.alpha_tilde(60, 3 * pi / (4 * log(60) ** 2)) == 3
    assert pt.alpha_tilde(100, 0.5) == int(np.ceil(2 / pi * log(100) ** 2))


def test_evaluate_asymptotic():
    assert pt.evaluate_asymptotic("escape", n=e**10) == pytest.approx(pi / 20)
    assert pt.evaluate_asymptotic("ring-hit", r=2, R=10, radius=10) == 0.0
    assert pt.evaluate_asymptotic("green", n=100) == pytest.approx(2 / pi * log(100))
    with pytest.raises(ValueError):
        pt.evaluate_asymptotic("ring-hit", r=5, R=10, radius=3)


def test_comparison_rows():
    rows = pt.comparison_rows([25, 50])
    assert len(rows) == 4
    greens = [r for r in rows if r[3] == "green"]
    assert all(r[6] >= 0 for r in rows)
    assert greens[0][4] > 0


def test_rejects_outside_points():
    with pytest.raises(ValueError):
        pt.green_function(10, (0, 0), (20, 0))
    with pytest.raises(ValueError):
        pt.w_matrix(10, (1, 1), (1, 1))
