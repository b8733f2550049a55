"""Simulate disk-stopped walks and look at their most-visited points.

A simple random walk started at the origin is stopped the first time it
leaves the disk of radius n.  The local time K(tau_n, x) counts visits
to x; its maximum over the lattice grows like (4/pi)(log n)^2, and the
points near that ceiling are the walk's favorite points.
"""

from math import log, pi

import numpy as np

from favpoints import walk


def main():
    print("scale   exit_time   max K   max K / (log n)^2   argmax")
    for n in (32, 64, 128, 256):
        rec = walk.simulate_disk_walk(n, seed=7)
        point, count = walk.max_local_time(rec)
        print(
            f"{n:5d}   {rec.exit_time:9d}   {count:5d}   "
            f"{count / log(n) ** 2:17.3f}   {point}"
        )
    print(f"\nasymptotic ceiling 4/pi = {4 / pi:.3f}")

    # conservation: every step lands somewhere, plus the start
    rec = walk.simulate_disk_walk(64, seed=7)
    assert rec.total_visits() == rec.exit_time + 1
    print("visit conservation: sum_x K(tau_n, x) == tau_n + 1  (checked)")

    # the same seed always reproduces the same walk, and the radius-n walk
    # is a prefix of the radius-2n walk on the shared step stream
    a = walk.simulate_disk_walk(64, seed=11, keep_path=True)
    b = walk.simulate_disk_walk(128, seed=11, keep_path=True)
    assert np.array_equal(b.path[: a.exit_time + 1], a.path)
    print("prefix coupling across radii: checked")


if __name__ == "__main__":
    main()
