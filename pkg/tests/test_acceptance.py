"""End-to-end checks of the package's headline guarantees.

One test per acceptance check, each printing a single PASS/FAIL line
(visible with -rA, -s, or on failure) before asserting.  The grid sizes,
tolerances, and runtime ceilings here are the ones the package promises.
"""

import dataclasses
import random
import re
import time
from itertools import product

from qzeta import cli
from qzeta.scalars import Rational, rat_parse
from qzeta.series import zeta_q, zeta_q_bruteforce
from qzeta.identities import (
    build_identity,
    cross_check,
    evaluate_identity,
    q_euler_terms,
    stuffle_terms,
    verify_proof_sums,
)
from qzeta.symbolic import (
    build_lemma,
    derive_lemma_by_operator,
    verify_lemma,
    verify_parfrac,
    verify_q1_reduction,
)
from qzeta.poly import rf_equal

NUMERIC_TOL = Rational(1, 10**25)
GRID_Q = tuple(rat_parse(x) for x in ("1/10", "1/4", "1/2", "3/4", "9/10"))
PI4_OVER_36 = 2.70580808427784547879  # zeta(2)^2, frozen reference


def report(n, ok, detail):
    print(f"AC-{n} {'PASS' if ok else 'FAIL'}: {detail}")
    assert ok, f"AC-{n} {detail}"


def test_ac1_lemma_full_grid():
    start = time.perf_counter()
    failures = [
        (s, t)
        for s, t in product(range(1, 9), repeat=2)
        if not verify_lemma(s, t)
    ]
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < 120
    report(
        1,
        ok,
        f"exact kernel decomposition on 64 (s,t) pairs in {elapsed:.1f}s "
        f"(limit 120s), failures: {failures}",
    )


def test_ac2_operator_route_matches_direct():
    failures = [
        (s, t)
        for s, t in product(range(1, 6), repeat=2)
        if not rf_equal(derive_lemma_by_operator(s, t), build_lemma(s, t).rhs)
    ]
    report(
        2,
        not failures,
        f"derivative-operator construction equals direct build on 25 pairs, "
        f"failures: {failures}",
    )


def test_ac3_classical_reductions():
    failures = [
        (s, t, which)
        for s, t in product(range(1, 9), repeat=2)
        for which, fn in (("q=1", verify_q1_reduction), ("parfrac", verify_parfrac))
        if not fn(s, t)
    ]
    report(
        3,
        not failures,
        f"q=1 collapse and partial-fraction identity on 64 pairs each, "
        f"failures: {failures}",
    )


def test_ac4_decomposition_grid():
    worst_width = Rational(0)
    worst_time = 0.0
    failures = []
    for s, t in product(range(2, 6), repeat=2):
        inst = q_euler_terms(s, t)
        for q in GRID_Q:
            start = time.perf_counter()
            rep = evaluate_identity(inst, q, NUMERIC_TOL)
            elapsed = time.perf_counter() - start
            width = max(rep.lhs_enclosure.width, rep.rhs_enclosure.width)
            worst_width = max(worst_width, width)
            worst_time = max(worst_time, elapsed)
            if rep.status != "verified" or width > NUMERIC_TOL or elapsed >= 10:
                failures.append((s, t, str(q), rep.status, float(width), elapsed))
    report(
        4,
        not failures,
        f"product decomposition verified on 80 (s,t,q) cases at width <= 1e-25 "
        f"(worst {float(worst_width):.1e}), worst case {worst_time:.2f}s "
        f"(limit 10s), failures: {failures}",
    )


def test_ac5_stuffle_grid_and_cross_check():
    failures = []
    for s, t in product(range(2, 6), repeat=2):
        inst = stuffle_terms(s, t)
        for q in GRID_Q:
            rep = evaluate_identity(inst, q, NUMERIC_TOL)
            width = max(rep.lhs_enclosure.width, rep.rhs_enclosure.width)
            if rep.status != "verified" or width > NUMERIC_TOL:
                failures.append(("stuffle", s, t, str(q), rep.status))
            cross = cross_check(s, t, q, NUMERIC_TOL)
            if cross.status != "verified":
                failures.append(("cross", s, t, str(q), cross.status))
    report(
        5,
        not failures,
        "stuffle rule and stuffle-vs-decomposition cross-check verified on "
        f"80 (s,t,q) cases at width <= 1e-25, failures: {failures}",
    )


# Cost-bounded pool for the bruteforce soundness draw.  The exact N = 5000
# partial sum costs roughly (sum of exponents) * log2(q denominator) "units"
# of big-integer work, so every entry keeps that product <= 5.
BRUTEFORCE_POOL = (
    ("2", "1/2"), ("2", "1/3"), ("2", "2/3"), ("2", "1/4"), ("2", "3/4"),
    ("2", "1/5"), ("2", "4/5"),
    ("3", "1/2"), ("3", "2/3"),
    ("4", "1/2"), ("5", "1/2"),
    ("2,1", "1/2"), ("2,1", "1/3"), ("2,1", "2/3"),
    ("2,2", "1/2"), ("3,1", "1/2"), ("2,3", "1/2"), ("3,2", "1/2"),
    ("2,1,1", "1/2"), ("2,2,1", "1/2"), ("2,1,1,1", "1/2"),
)


def test_ac6_bruteforce_inside_enclosures():
    tol = Rational(1, 10**6)
    rng = random.Random(20260814)
    cases = rng.sample(BRUTEFORCE_POOL, 20)
    failures = []
    for comp_str, q_str in cases:
        comp = tuple(int(x) for x in comp_str.split(","))
        q = rat_parse(q_str)
        enc = zeta_q(comp, q, tol)
        partial = zeta_q_bruteforce(comp, q, 5000)
        if not enc.contains(partial) or enc.width > tol:
            failures.append((comp_str, q_str, float(enc.width)))
    report(
        6,
        not failures,
        f"exact N=5000 partial sums inside 1e-6 enclosures for 20 seeded "
        f"draws from a {len(BRUTEFORCE_POOL)}-entry pool, failures: {failures}",
    )


def test_ac7_rearranged_double_sums():
    rep = verify_proof_sums(2, 2, 0, 0, 1, Rational(1, 2), 2000)
    ok = (
        rep.status == "verified"
        and rep.s_check.ok
        and rep.t_check.ok
        and rep.s_check.label == "S[2,2,0,0] vs zeta_q[2,2]"
        and rep.t_check.label == "T[2,2,1] vs phi_q[3]"
    )
    report(
        7,
        ok,
        f"diagonal rearrangements at q=1/2, N=2000: {rep.s_check.label} and "
        f"{rep.t_check.label} both inside their slack bands "
        f"(status {rep.status})",
    )


def test_ac8_limit_toward_classical(capsys):
    rc = cli.main(["limit", "--s", "2", "--t", "2", "--steps", "10"])
    out = capsys.readouterr().out
    lines = out.splitlines()
    classical = float(lines[0].split("~")[1].split()[0])
    rows = [l for l in lines if re.match(r"\s*\d+\s+\d+/\d+\s", l)]
    gaps = [float(row.split()[-1]) for row in rows]
    ok = (
        rc == 0
        and len(gaps) == 10
        and gaps[-1] < 1e-2
        and gaps[-1] < gaps[0]
        and abs(classical - PI4_OVER_36) < 1e-5
    )
    report(
        8,
        ok,
        f"q->1 product drift: classical ~ {classical}, first gap {gaps[0]:.3g}, "
        f"final gap {gaps[-1]:.3g} (< 1e-2 and < first)",
    )


def _single_coefficient_mutations():
    seeds = (
        build_identity("euler", 2, 2),
        build_identity("qdecomp", 2, 2),
        build_identity("stuffle", 2, 2),
        build_identity("stuffle", 2, 3),
    )
    for inst in seeds:
        for i, term in enumerate(inst.terms):
            step = 1 if term.coeff > 0 else -1
            bad = dataclasses.replace(term, coeff=term.coeff + step)
            yield inst.label(), term.label(), dataclasses.replace(
                inst, terms=inst.terms[:i] + (bad,) + inst.terms[i + 1 :]
            )


def test_ac9_mutations_are_detected():
    tol = Rational(1, 10**6)
    survived = []
    total = 0
    for label, term_label, mutant in _single_coefficient_mutations():
        total += 1
        q = None if mutant.is_classical() else Rational(1, 2)
        rep = evaluate_identity(mutant, q, tol)
        if rep.status != "violated":
            survived.append((label, term_label, rep.status))
    ok = total >= 10 and not survived
    report(
        9,
        ok,
        f"{total} single-coefficient mutations across the three builders all "
        f"reported violated at 1e-6, survivors: {survived}",
    )
