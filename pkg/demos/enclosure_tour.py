"""What a certified enclosure buys you, on one value.

Run:  python3 demos/enclosure_tour.py
"""

from qzeta import (
    Rational,
    decimal_str,
    qzeta_tail_bound,
    rat_str,
    zeta_q,
    zeta_q_bruteforce,
    zeta_classical,
)


def main():
    comp, q = (2, 1), Rational(3, 4)
    print(f"Target: zeta_q[2,1] at q = {rat_str(q)}")
    print()

    print("Enclosures at shrinking tolerances (exact rational endpoints):")
    for exp in (4, 10, 20, 40):
        enc = zeta_q(comp, q, Rational(1, 10**exp))
        digits = exp + 2
        print(
            f"    tol 1e-{exp:<3} ->  "
            f"[{decimal_str(enc.lo, digits, 'floor')}, "
            f"{decimal_str(enc.hi, digits, 'ceil')}]"
        )
    print()

    print("Exact partial sums (computed by an independent engine) climb into")
    print("the 1e-12 enclosure from below and never pass its upper end:")
    enc = zeta_q(comp, q, Rational(1, 10**12))
    for n in (10, 100, 1000):
        partial = zeta_q_bruteforce(comp, q, n)
        where = "inside" if enc.contains(partial) else "below it, tail still missing"
        print(f"    N = {n:<5} partial ~ {decimal_str(partial, 14)}   {where}")
    print()

    print("The proven tail bound vs the actual discarded remainder:")
    far = zeta_q_bruteforce(comp, q, 1500)
    for n in (20, 60, 180):
        actual = far - zeta_q_bruteforce(comp, q, n)
        bound = qzeta_tail_bound(comp, q, n)
        print(
            f"    N = {n:<4} remainder ~ {decimal_str(actual, 16)}   "
            f"bound {decimal_str(bound, 16, 'ceil')}"
        )
    print()

    print("The classical cousins come with two-sided tails:")
    for comp2, label in (((2,), "zeta(2) = pi^2/6"), ((2, 1), "zeta(2,1) = zeta(3)")):
        enc = zeta_classical(comp2, Rational(1, 10**8))
        print(
            f"    {label:<18} in [{decimal_str(enc.lo, 10, 'floor')}, "
            f"{decimal_str(enc.hi, 10, 'ceil')}]"
        )


if __name__ == "__main__":
    main()
