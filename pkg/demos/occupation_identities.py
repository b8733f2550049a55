"""Closed-form occupation probabilities for a 3-state chain, checked.

For a Markov chain on {1, 2, 3} started at 1, the probability of making
exactly n1 visits to state 1 and n2 visits to state 2 before doing
anything else, ending at a prescribed state, collapses to a single
binomial sum.  Exact rational arithmetic makes the check against full
enumeration sharp: equality, not approximation.
"""

from fractions import Fraction

import numpy as np

from favpoints import occupation as occ


def main():
    uniform = occ.ThreeStateChain(
        tuple(tuple(Fraction(1, 3) for _ in range(3)) for _ in range(3))
    )
    print("uniform chain, closed form vs enumeration (exact rationals):")
    for n1, n2, end in ((1, 1, 2), (2, 1, 1), (3, 2, 2), (4, 4, 1)):
        q = occ.OccupationQuery(n1, n2, end)
        closed = occ.occupation_probability(uniform, q)
        brute = occ.brute_force(uniform, q)
        print(f"n1={n1}, n2={n2}, end={end}:  {closed}  ==  {brute}  : {closed == brute}")

    rng = np.random.default_rng(5)
    chain = occ.random_rational_chain(rng)
    print("\na random rational chain:")
    for row in chain.d:
        print("  ", [str(p) for p in row])
    mismatches = 0
    for total in range(2, 11):
        for n1 in range(1, total):
            for end in (1, 2):
                q = occ.OccupationQuery(n1, total - n1, end)
                mismatches += occ.occupation_probability(chain, q) != occ.brute_force(chain, q)
    print(f"closed form vs enumeration over all n1+n2 <= 10: {mismatches} mismatches")

    # large visit counts leave exact range; the log-domain float route
    # matches the rational value wherever both are feasible
    fchain = occ.as_float(chain)
    q = occ.OccupationQuery(30, 25, 2)
    exact = float(occ.occupation_probability(chain, q))
    approx = occ.occupation_probability(fchain, q)
    print(f"\nn1=30, n2=25: exact {exact:.12e}, log-domain float {approx:.12e}")


if __name__ == "__main__":
    main()
