"""The pair-count exponents rho2 and rho2_hat, two ways each.

rho2(alpha, beta) governs the almost-sure growth of the number of
ordered alpha-favorite pairs within distance n^beta; rho2_hat governs
the growth of its expectation.  Both have a piecewise closed form and an
equivalent variational form, and the two routes agree to high accuracy
-- that mutual agreement is the correctness check.
"""

import numpy as np

from favpoints import exponents as ex


def main():
    print("alpha  beta   rho2      (variational)   rho2_hat  (variational)")
    for alpha in (0.1, 0.25, 0.5, 0.845):
        for beta in (0.3, 0.5, 0.8):
            r, rv = ex.rho2(alpha, beta), ex.rho2_variational(alpha, beta)
            h, hv = ex.rho2_hat(alpha, beta), ex.rho2_hat_variational(alpha, beta)
            print(
                f"{alpha:5.3f}  {beta:4.2f}   {r:8.5f}  {rv:12.5f}   "
                f"{h:8.5f}  {hv:12.5f}"
            )

    worst = 0.0
    for alpha in np.linspace(0.05, 0.95, 30):
        for beta in np.linspace(0.05, 0.95, 30):
            worst = max(
                worst,
                abs(ex.rho2(alpha, beta) - ex.rho2_variational(alpha, beta)),
                abs(ex.rho2_hat(alpha, beta) - ex.rho2_hat_variational(alpha, beta)),
            )
    print(f"\nmax |piecewise - variational| on a 30x30 grid: {worst:.2e}")

    # the expectation exponent dominates: individual trials can fall far
    # short of the mean, never the other way around asymptotically
    gaps = [
        ex.rho2_hat(a, b) - ex.rho2(a, b)
        for a in np.linspace(0.05, 0.95, 30)
        for b in np.linspace(0.05, 0.95, 30)
    ]
    print(f"rho2_hat - rho2 ranges over [{min(gaps):.3f}, {max(gaps):.3f}] (never negative)")


if __name__ == "__main__":
    main()
