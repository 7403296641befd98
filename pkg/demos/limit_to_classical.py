"""Watch the q-deformation collapse onto the classical value as q -> 1.

The decomposition's right-hand side is summed with the dyadic interval
engine (exact partial sums are hopeless this close to q = 1), and its
midpoint drifts toward the classical product zeta(2)*zeta(3).

Run:  python3 demos/limit_to_classical.py
"""

from qzeta import (
    Rational,
    decimal_str,
    q_euler_terms,
    rat_str,
    sum_terms,
    zeta_classical,
)


def main():
    s, t = 2, 3
    tol = Rational(1, 10**8)
    classical = zeta_classical((s,), tol / 4) * zeta_classical((t,), tol / 4)
    target = classical.midpoint
    print(f"classical zeta({s})*zeta({t}) ~ {decimal_str(target, 12)}")
    print()

    inst = q_euler_terms(s, t)
    print(f"{'m':>3}  {'q = 1 - 2^-m':>14}  {'rhs midpoint':>16}  {'gap':>12}")
    previous = None
    for m in range(1, 11):
        q = Rational(2**m - 1, 2**m)
        enc, _ = sum_terms(inst.terms, q, tol, engine="dyadic")
        gap = abs(enc.midpoint - target)
        arrow = ""
        if previous is not None:
            arrow = "  (smaller)" if gap < previous else "  (larger!)"
        print(
            f"{m:>3}  {rat_str(q):>14}  {decimal_str(enc.midpoint, 12):>16}  "
            f"{decimal_str(gap, 10):>12}{arrow}"
        )
        previous = gap
    print()
    print("Every identity in this package degenerates, term by term, to a")
    print("classical one at q = 1; the gap column is that statement made")
    print("numerical.")


if __name__ == "__main__":
    main()
