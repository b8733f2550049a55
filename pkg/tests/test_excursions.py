import json
import math

import numpy as np
import pytest

from favpoints import excursions as exc, walk


def naive_count(path, z, r_outer, r_inner, reverse=False):
    """Independent two-state scanner over the radius sequence."""
    d = np.hypot(path[:, 0] - z[0], path[:, 1] - z[1])
    count = 0
    if not reverse:
        armed = d[0] > r_outer
        for r in d:
            if not armed and r > r_outer:
                armed = True
            elif armed and r <= r_inner:
                count += 1
                armed = False
    else:
        armed = d[0] <= r_inner
        for r in d:
            if not armed and r <= r_inner:
                armed = True
            elif armed and r > r_outer:
                count += 1
                armed = False
    return count


def test_factorial_radii():
    sched = exc.build_schedule("factorial", 4)
    assert sched.radii == [1, 8, 216, 13824]
    with pytest.raises(ValueError):
        exc.build_schedule("factorial", 21)


def test_geometric_radii():
    sched = exc.build_schedule("geometric", 5, r_base=4, ratio=4)
    assert sched.radii == [4, 16, 64, 256, 1024]
    with pytest.raises(ValueError):
        exc.build_schedule("geometric", 5, r_base=4, ratio=1)


def test_reference_counts():
    sched = exc.build_schedule("geometric", 5, alpha=0.5, gamma=1.0, n=10,
                               r_base=2, ratio=2)
    assert sched.reference_count(2) == pytest.approx(192 * math.log(2))
    assert sched.rescaled_reference_count(3) == pytest.approx(
        6 * 0.5 * 9 * math.log(3)
    )


def test_outward_march():
    path = np.array([[k, 0] for k in range(30)])
    assert exc.count_excursions(path, (0, 0), 10, 3) == 0
    assert exc.count_excursions(path, (0, 0), 10, 3, reverse=True) == 1


def test_constructed_oscillation():
    segs = []
    for _ in range(3):
        segs += [[0, 0], [12, 0], [2, 0]]
    path = np.array(segs)
    assert exc.count_excursions(path, (0, 0), 10, 3) == 3


def test_counts_match_naive_scanner():
    for seed in range(30):
        rec = walk.simulate_disk_walk(24, seed, keep_path=True)
        for r_out, r_in in ((10, 3), (20, 8), (15, 14)):
            for rev in (False, True):
                got = exc.count_excursions(rec.path, (0, 0), r_out, r_in, reverse=rev)
                assert got == naive_count(rec.path, (0, 0), r_out, r_in, reverse=rev)


def test_inward_outward_alternation():
    for seed in range(20):
        rec = walk.simulate_disk_walk(20, seed, keep_path=True)
        a = exc.count_excursions(rec.path, (2, 1), 12, 4)
        b = exc.count_excursions(rec.path, (2, 1), 12, 4, reverse=True)
        assert abs(a - b) <= 1


def test_translation_invariance():
    rec = walk.simulate_disk_walk(16, 8, keep_path=True)
    base = exc.count_excursions(rec.path, (3, -2), 9, 2)
    shifted = exc.count_excursions(rec.path + np.array([5, 7]), (8, 5), 9, 2)
    assert base == shifted


def test_truncate_at_radius():
    path = np.array([[k, 0] for k in range(30)])
    cut = exc.truncate_at_radius(path, (0, 0), 10)
    assert np.hypot(*cut[-1]) > 10
    assert (np.hypot(cut[:-1, 0], cut[:-1, 1]) <= 10).all()


def test_diagnostic_zero_deviation_passes():
    rec = walk.simulate_disk_walk(40, 13, keep_path=True)
    sched = exc.build_schedule("geometric", 4, alpha=0.3, n=40, r_base=2, ratio=3)
    observed = [
        exc.count_excursions(rec.path, (0, 0), sched.radii[k - 1], sched.radii[k - 2])
        for k in range(2, 5)
    ]
    rep = exc.successful_diagnostic(rec, (0, 0), sched, references=observed)
    assert rep.successful
    assert all(lv.passed for lv in rep.levels)


def test_diagnostic_single_level_failure():
    rec = walk.simulate_disk_walk(40, 13, keep_path=True)
    sched = exc.build_schedule("geometric", 4, alpha=0.3, n=40, r_base=2, ratio=3)
    observed = [
        exc.count_excursions(rec.path, (0, 0), sched.radii[k - 1], sched.radii[k - 2])
        for k in range(2, 5)
    ]
    # push level k=3 just outside its +-k tolerance
    refs = list(observed)
    refs[1] = observed[1] + 4
    rep = exc.successful_diagnostic(rec, (0, 0), sched, references=refs)
    assert not rep.successful
    assert [lv.passed for lv in rep.levels] == [True, False, True]


def test_diagnostic_requires_path():
    rec = walk.simulate_disk_walk(10, 1)
    sched = exc.build_schedule("geometric", 4, r_base=2, ratio=2)
    with pytest.raises(ValueError):
        exc.successful_diagnostic(rec, (0, 0), sched)


def test_diagnostic_json_round_trip():
    rec = walk.simulate_disk_walk(30, 2, keep_path=True)
    sched = exc.build_schedule("geometric", 4, alpha=0.2, gamma=1.0, n=30,
                               r_base=2, ratio=2.5)
    rep = exc.successful_diagnostic(rec, (0, 0), sched, stop_radius=25)
    doc = json.loads(rep.to_json())
    assert doc["schedule_kind"] == "geometric"
    assert doc["stop_radius"] == 25
    assert len(doc["levels"]) == 3
    assert doc["successful"] == all(lv["passed"] for lv in doc["levels"])
