"""Walk through the decomposition of a product of two q-zeta values.

Run:  python3 demos/decompose_a_product.py
"""

from qzeta import (
    Rational,
    decimal_str,
    evaluate_identity,
    q_euler_terms,
    euler_terms,
    render_lemma,
    verify_lemma,
)


def main():
    s, t = 2, 3

    print("The structural identity behind everything, at (s,t) = (2,3):")
    print()
    print(render_lemma(s, t))
    print()
    print(f"exact polynomial check: verify_lemma({s},{t}) -> {verify_lemma(s, t)}")
    print()

    inst = q_euler_terms(s, t)
    print(f"Summing that identity over indices turns zeta_q[{s}]*zeta_q[{t}] into:")
    for term in inst.terms:
        print(f"    {term.label()}")
    print()

    for q in (Rational(1, 2), Rational(9, 10)):
        report = evaluate_identity(inst, q, Rational(1, 10**30))
        lhs, rhs = report.lhs_enclosure, report.rhs_enclosure
        print(f"q = {q}: status {report.status}")
        print(f"    lhs mid ~ {decimal_str(lhs.midpoint, 32)}")
        print(f"    rhs mid ~ {decimal_str(rhs.midpoint, 32)}")
        print(f"    widths  <= {decimal_str(max(lhs.width, rhs.width), 32, 'ceil')}")
    print()

    print("Dropping every (1-q)-weighted term leaves the classical rule:")
    classical = euler_terms(s, t)
    survivors = [term for term in inst.terms if term.eps_power == 0]
    for qterm, cterm in zip(survivors, classical.terms):
        print(f"    {qterm.label():>18}   <->   {cterm.label()}")
    report = evaluate_identity(classical, tol=Rational(1, 10**6))
    print(f"classical check at tol 1e-6: {report.status}")


if __name__ == "__main__":
    main()
