"""Torus cover times, late points, and annulus excursion diagnostics.

On the n x n torus the last sites to be visited take about
(4/pi)(n log n)^2 steps; the alpha-late points are those still unvisited
at fraction alpha of that scale.  The excursion counter instruments how
often a walk crosses a ladder of annuli around a center, which is the
machinery used to control favorite points at extreme levels.
"""

from math import log, pi

import numpy as np

from favpoints import excursions as exc, pointsets as ps, walk


def main():
    n = 64
    ratios = []
    print("torus cover runs at n = 64:")
    for seed in range(5):
        rec = walk.simulate_torus_walk(n, seed)
        r = rec.hits.max() / (n * log(n)) ** 2
        ratios.append(r)
        late = ps.late_points(rec, 0.3)
        print(f"seed {seed}: cover time {rec.total_steps:8d},  "
              f"max T/(n log n)^2 = {r:.3f},  |0.3-late| = {late.size}")
    print(f"median ratio {np.median(ratios):.3f}  (limit 4/pi = {4 / pi:.3f})\n")

    # excursion ladder around the origin of a disk walk
    rec = walk.simulate_disk_walk(256, seed=2, keep_path=True)
    sched = exc.build_schedule("geometric", 6, alpha=0.3, gamma=1.0, n=256,
                               r_base=2, ratio=3)
    print(f"geometric radius ladder: {sched.radii}")
    print("inward excursion counts per annulus:")
    for k in range(2, sched.levels + 1):
        r_out, r_in = sched.radii[k - 1], sched.radii[k - 2]
        cnt = exc.count_excursions(rec.path, (0, 0), r_out, r_in)
        rev = exc.count_excursions(rec.path, (0, 0), r_out, r_in, reverse=True)
        print(f"k = {k}: [{r_in:4d} -> {r_out:4d}]  inward {cnt:4d}, outward {rev:4d}")

    rep = exc.successful_diagnostic(rec, (0, 0), sched)
    print(f"\nreference-ladder diagnostic: successful = {rep.successful}")
    for lv in rep.levels:
        print(f"  k = {lv.k}: observed {lv.observed:4d}, reference {lv.reference:8.1f}, "
              f"tolerance +-{lv.tolerance}, {'pass' if lv.passed else 'fail'}")
    print("(factorial ladders (k!)^3 outgrow any simulation almost immediately;")
    print(" geometric ladders are the desk-scale surrogate)")


if __name__ == "__main__":
    main()
