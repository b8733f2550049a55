"""Gaussian free field sampling and its high points.

The field on an n x n box with zero boundary has covariance equal to
the killed-walk Green matrix, which puts its high-point thresholds
(phi^2/2 >= (4 alpha/pi)(log n)^2) on the same scale as the walk's
favorite-point thresholds.  The running maximum tends to
2 sqrt(2/pi) log n.
"""

from math import log, pi, sqrt

import numpy as np

from favpoints import gff, pointsets as ps


def main():
    print("    n   mean max phi / log n    (limit 2 sqrt(2/pi) = %.3f)" % (2 * sqrt(2 / pi)))
    for n in (16, 32, 64):
        factor = gff.build_covariance(n)
        fields = gff.sample_many(factor, seed=3, count=100)
        ratio = fields.max(axis=(1, 2)).mean() / log(n)
        print(f"{n:5d}   {ratio:20.3f}")

    n = 64
    factor = gff.build_covariance(n)
    sample = gff.sample(factor, seed=12)
    print("\nhigh-point set sizes at n = 64 (one sample):")
    prev = None
    for alpha in (0.1, 0.2, 0.3, 0.5):
        hp = ps.high_points(sample, alpha)
        density_exp = np.log(max(hp.size, 1)) / log(n)
        nested = "" if prev is None else ("  (nested in previous)" if hp.as_set() <= prev else "  NOT NESTED")
        print(f"alpha = {alpha:3.1f}: |set| = {hp.size:5d},  log|set|/log n = {density_exp:.2f} "
              f"(first-order prediction {2 * (1 - alpha):.2f}){nested}")
        prev = hp.as_set()


if __name__ == "__main__":
    main()
