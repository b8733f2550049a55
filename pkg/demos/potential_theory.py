"""Exact lattice potential theory on disks versus its asymptotic laws.

Everything here is computed by sparse linear solves (no simulation):
Green's functions, return/escape probabilities, and the two-point
decomposition that splits "exit the disk before revisiting either
marked point" into per-point contributions.
"""

from math import log, pi

from favpoints import potential as pt


def main():
    print("Green's function at the origin vs (2/pi) log n:")
    print("    n     exact     leading term   rel err")
    for n, x, y, kind, exact, asym, rel in pt.comparison_rows([16, 32, 64, 128, 256]):
        if kind == "green":
            print(f"{n:5d}   {exact:7.4f}   {asym:12.4f}   {rel:7.2%}")
    print("the gap is the constant-order term the leading formula drops\n")

    print("escape probability P(tau_n < T_0) vs pi/(2 log n):")
    for n in (25, 50, 100, 200):
        exact = 1 - pt.hitting_probability(n, (0, 0), [(0, 0)], variant="return")
        asym = pi / (2 * log(n))
        print(f"{n:5d}   {exact:7.4f}   {asym:12.4f}   {abs(exact - asym) / asym:7.2%}")

    print("\ntwo marked points x1 = (10,0), x2 = (-10,0) in D(0,60):")
    w = pt.w_matrix(60, (10, 0), (-10, 0))
    p1, p2 = pt.two_point_exit_split(w)
    print(f"mutual expected visits W =\n{w.w}")
    print(f"exit split p1 = {p1:.6f}, p2 = {p2:.6f}")
    direct = 1 - pt.hitting_probability(60, (10, 0), [(10, 0), (-10, 0)], variant="return")
    print(f"independent absorbing solve for p1: {direct:.6f} (gap {abs(p1 - direct):.2e})")

    c = pt.two_point_chain(60, (5, 0), (5, 8))
    print("\nreduced chain among (x, x', boundary) rows:")
    print(c.b)
    print(f"time reversal symmetry b12 = b21: gap {abs(c.b[0, 1] - c.b[1, 0]):.2e}")

    alpha = 3 * pi / (4 * log(60) ** 2)
    b = pt.pair_favorite_bounds(60, (4, 0), (0, 4), alpha)
    print(
        f"\nboth-favorite probability bounds at n=60, visit threshold {b.alpha_tilde}: "
        f"[{b.lower:.5f}, {b.upper:.5f}]"
    )


if __name__ == "__main__":
    main()
