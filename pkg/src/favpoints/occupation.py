"""Joint occupation probabilities for a 3-state Markov chain.

For a chain on {1, 2, 3} started at state 1, `occupation_probability`
evaluates in closed form the probability that the first n1 + n2 steps
visit state 1 exactly n1 times and state 2 exactly n2 times and end in a
prescribed state in {1, 2}.  `brute_force` enumerates every admissible
visit sequence and is the independent oracle.

With exact rational transition entries (fractions.Fraction) both routes
return exact rationals; with floats the closed form is evaluated in the
log domain so it stays accurate for large n1 + n2.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import comb, exp, inf, log

from scipy.special import gammaln, logsumexp


@dataclass
class ThreeStateChain:
    """Row-stochastic 3x3 transition matrix d[i][l], states numbered 1..3."""

    d: tuple

    def __post_init__(self):
        d = tuple(tuple(row) for row in self.d)
        if len(d) != 3 or any(len(row) != 3 for row in d):
            raise ValueError("transition matrix must be 3x3")
        for row in d:
            if any(not (0 <= p <= 1) for p in row):
                raise ValueError("transition probabilities must lie in [0, 1]")
            s = sum(row)
            if isinstance(s, Fraction):
                ok = s == 1
            else:
                ok = abs(s - 1.0) <= 1e-12
            if not ok:
                raise ValueError(f"row sums to {s}, expected 1")
        object.__setattr__(self, "d", d)

    def p(self, i, l):
        """Transition probability from state i to state l (1-based)."""
        return self.d[i - 1][l - 1]

    @property
    def exact(self):
        return all(isinstance(p, (Fraction, int)) for row in self.d for p in row)


@dataclass
class OccupationQuery:
    n1: int
    n2: int
    end_state: int

    def __post_init__(self):
        if self.n1 < 1 or self.n2 < 1:
            raise ValueError("the occupation identities assume n1 >= 1 and n2 >= 1")
        if self.end_state not in (1, 2):
            raise ValueError("end_state must be 1 or 2")


def occupation_probability(chain, q):
    """Closed-form joint occupation probability, started at state 1.

    end_state == 2:
        sum over 0 <= i <= min(n1, n2 - 1) of
        d11^(n1-i) d12^(i+1) C(n1, i) d21^i d22^(n2-i-1) C(n2-1, i)
    end_state == 1:
        sum over 1 <= i <= min(n1, n2) of
        d11^(n1-i) d12^i C(n1, i) d21^i d22^(n2-i) C(n2-1, i-1)
    """
    d11, d12 = chain.p(1, 1), chain.p(1, 2)
    d21, d22 = chain.p(2, 1), chain.p(2, 2)
    n1, n2 = q.n1, q.n2
    if chain.exact:
        d11, d12, d21, d22 = map(Fraction, (d11, d12, d21, d22))
        total = Fraction(0)
        if q.end_state == 2:
            for i in range(0, min(n1, n2 - 1) + 1):
                total += (
                    d11 ** (n1 - i) * d12 ** (i + 1) * comb(n1, i)
                    * d21**i * d22 ** (n2 - i - 1) * comb(n2 - 1, i)
                )
        else:
            for i in range(1, min(n1, n2) + 1):
                total += (
                    d11 ** (n1 - i) * d12**i * comb(n1, i)
                    * d21**i * d22 ** (n2 - i) * comb(n2 - 1, i - 1)
                )
        return total
    return _float_closed_form(d11, d12, d21, d22, n1, n2, q.end_state)


def _float_closed_form(d11, d12, d21, d22, n1, n2, end):
    """Log-domain evaluation; zero entries handled via -inf log weights."""

    def lg(p):
        return log(p) if p > 0 else -inf

    l11, l12, l21, l22 = lg(d11), lg(d12), lg(d21), lg(d22)

    def term(e11, e12, e21, e22, lb):
        # a factor p^0 contributes 0 even when p == 0
        s = lb
        for lp, e in ((l11, e11), (l12, e12), (l21, e21), (l22, e22)):
            if e:
                s += lp * e
        return s

    def lcomb(n, k):
        if k < 0 or k > n:
            return -inf
        return gammaln(n + 1) - gammaln(k + 1) - gammaln(n - k + 1)

    logs = []
    if end == 2:
        for i in range(0, min(n1, n2 - 1) + 1):
            logs.append(
                term(n1 - i, i + 1, i, n2 - i - 1, lcomb(n1, i) + lcomb(n2 - 1, i))
            )
    else:
        for i in range(1, min(n1, n2) + 1):
            logs.append(
                term(n1 - i, i, i, n2 - i, lcomb(n1, i) + lcomb(n2 - 1, i - 1))
            )
    logs = [v for v in logs if v > -inf]
    if not logs:
        return 0.0
    return float(exp(logsumexp(logs)))


def brute_force(chain, q, start=1, max_total=20):
    """Oracle: enumerate every {1,2}-valued visit sequence explicitly.

    Sums the product of transition weights over all sequences
    (X_1, ..., X_{n1+n2}) in {1, 2} with exactly n1 ones and n2 twos and
    X_{n1+n2} == end_state, the chain started at `start` (the start is
    not counted).  Exact rationals when the chain is rational.
    """
    n = q.n1 + q.n2
    if n > max_total:
        raise ValueError(f"enumeration limited to n1 + n2 <= {max_total}")
    zero = Fraction(0) if chain.exact else 0.0
    total = zero
    for ones_at in combinations(range(n), q.n1):
        seq = [2] * n
        for i in ones_at:
            seq[i] = 1
        if seq[-1] != q.end_state:
            continue
        w = chain.p(start, seq[0])
        for a, b in zip(seq, seq[1:]):
            w = w * chain.p(a, b)
        total += w
    return total


def full_enumeration_total(chain, n, start=1):
    """Total probability over all length-n trajectories in {1,2,3}; equals 1.

    Used by tests to confirm that the {1,2}-restricted enumeration plus
    paths touching state 3 exhausts the probability space.
    """
    total = Fraction(0) if chain.exact else 0.0
    for seq in product((1, 2, 3), repeat=n):
        w = chain.p(start, seq[0])
        for a, b in zip(seq, seq[1:]):
            w = w * chain.p(a, b)
        total += w
    return total


def swap_states(chain):
    """Relabel states 1 <-> 2 (state 3 fixed)."""
    sigma = (1, 0, 2)
    return ThreeStateChain(
        tuple(tuple(chain.d[sigma[i]][sigma[l]] for l in range(3)) for i in range(3))
    )


def random_rational_chain(rng, denominator=12):
    """A random row-stochastic chain with Fraction entries."""
    rows = []
    for _ in range(3):
        cuts = sorted(rng.integers(0, denominator + 1, size=2))
        rows.append(
            (
                Fraction(int(cuts[0]), denominator),
                Fraction(int(cuts[1] - cuts[0]), denominator),
                Fraction(int(denominator - cuts[1]), denominator),
            )
        )
    return ThreeStateChain(tuple(rows))


def as_float(chain):
    return ThreeStateChain(tuple(tuple(float(p) for p in row) for row in chain.d))
