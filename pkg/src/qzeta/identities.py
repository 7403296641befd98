"""Product identities for zeta-type series: term lists and verification.

Three identities share one shape: a product of two depth-one values on the
left, a signed sum of weighted series values on the right.

* ``euler_terms``   - classical: zeta(s) zeta(t) as a binomial-weighted sum
                      of double zeta values.
* ``q_euler_terms`` - the q-deformation: zeta_q[s] zeta_q[t] as a double sum
                      of binomially weighted zeta_q[.,.] terms carrying
                      (1-q)^b factors, minus multinomially weighted phi_q
                      correction terms carrying (1-q)^j.
* ``stuffle_terms`` - index-merging product rule:
                      zeta_q[s] zeta_q[t] = zeta_q[s,t] + zeta_q[t,s]
                      + zeta_q[s+t] + (1-q) zeta_q[s+t-1].

``evaluate_identity`` turns an instance into two certified enclosures (LHS
product, RHS sum) and reports verified / violated / inconclusive.  Because
both enclosures are rigorous, "violated" (disjoint intervals) is a proof of
inequality at that (s, t, q) - which is what makes mutation tests meaningful.

``verify_proof_sums`` checks the summation-order rearrangement that links
the double-sum forms S[s,t,a,b] and T[s,t,j] (sums over u + v = n) to
zeta_q[t+a, s-a-b] and phi_q[s+t-j] respectively: the truncated double sums
are computed by their own diagonal-by-diagonal engine and must land inside
the series enclosures widened by the truncation slack.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Union

from .enclosure import Enclosure
from .scalars import Rational, as_rational, exact_sum
from .series import (
    DEFAULT_MAX_TERMS,
    ClassicalZeta,
    Composition,
    Phi,
    QZeta,
    SeriesResult,
    TruncationLimitError,
    _dnc_node,
    evaluate_target,
    phi_tail_bound,
    qzeta_tail_bound,
)

Target = Union[QZeta, Phi, ClassicalZeta]

_COARSE = Rational(1, 8)


@dataclass(frozen=True)
class ZetaTerm:
    """One signed summand coeff * (1-q)^eps_power * target."""

    coeff: int
    eps_power: int
    target: Target

    def __post_init__(self):
        if self.coeff == 0:
            raise ValueError("term coefficient must be nonzero")
        if self.eps_power < 0:
            raise ValueError("eps_power must be >= 0")
        if isinstance(self.target, Phi) and self.eps_power < 1:
            raise ValueError("phi targets only occur with a (1-q) factor")

    def sort_key(self):
        return (*self.target.sort_key(), self.eps_power)

    def scalar(self, q) -> Rational:
        """The exact factor coeff * (1-q)^eps_power (q may be None if eps=0)."""
        if self.eps_power == 0:
            return Rational(self.coeff)
        return self.coeff * (1 - q) ** self.eps_power

    def label(self) -> str:
        eps = f"(1-q)^{self.eps_power}*" if self.eps_power else ""
        return f"{self.coeff:+d}*{eps}{self.target.label()}"


@dataclass(frozen=True)
class IdentityInstance:
    """A concrete identity: lhs[0] * lhs[1] = sum of terms."""

    kind: str  # euler | qdecomp | stuffle
    s: int
    t: int
    lhs: tuple
    terms: tuple

    def is_classical(self) -> bool:
        return self.kind == "euler"

    def label(self) -> str:
        return f"{self.kind}({self.s},{self.t})"


@dataclass(frozen=True)
class VerificationReport:
    identity: IdentityInstance
    q: Optional[Rational]
    tol: Rational
    lhs_enclosure: Enclosure
    rhs_enclosure: Enclosure
    status: str  # verified | violated | inconclusive
    max_truncation: int


def _status(lhs: Enclosure, rhs: Enclosure, tol) -> str:
    if not lhs.intersects(rhs):
        return "violated"
    if lhs.width <= tol and rhs.width <= tol:
        return "verified"
    return "inconclusive"


def _require_st(s: int, t: int):
    if s < 2 or t < 2:
        raise ValueError(f"identity requires s >= 2 and t >= 2, got ({s}, {t})")


def _merged(terms) -> tuple:
    """Canonical form: identical (target, eps_power) merged, sorted, no zeros."""
    acc = {}
    for coeff, eps, target in terms:
        if coeff == 0:
            continue
        key = (target, eps)
        acc[key] = acc.get(key, 0) + coeff
    out = [
        ZetaTerm(coeff, eps, target)
        for (target, eps), coeff in acc.items()
        if coeff != 0
    ]
    out.sort(key=ZetaTerm.sort_key)
    return tuple(out)


def euler_terms(s: int, t: int) -> IdentityInstance:
    """Classical decomposition of zeta(s) zeta(t) into double zeta values."""
    _require_st(s, t)
    raw = []
    for x, y in ((s, t), (t, s)):
        for a in range(x):
            raw.append((math.comb(a + y - 1, y - 1), 0, ClassicalZeta(Composition((y + a, x - a)))))
    return IdentityInstance(
        kind="euler",
        s=s,
        t=t,
        lhs=(ClassicalZeta(Composition((s,))), ClassicalZeta(Composition((t,)))),
        terms=_merged(raw),
    )


def q_euler_terms(s: int, t: int) -> IdentityInstance:
    """q-deformed decomposition of zeta_q[s] zeta_q[t].

    Double-sum part: for (x, y) = (s, t) and (t, s), all a in [0, x-1] and
    b in [0, x-1-a]**, coefficient C(a+y-1, y-1) C(y-1, b) with a (1-q)^b
    factor on zeta_q[y+a, x-a-b].  Correction part: for j in [1, min(s,t)],
    minus the multinomial (s+t-j-1)! / ((s-j)! (t-j)! (j-1)!) with (1-q)^j
    on phi_q[s+t-j].  (C(y-1, b) vanishes for b > y-1, so those lattice
    points contribute nothing.)
    """
    _require_st(s, t)
    raw = []
    for x, y in ((s, t), (t, s)):
        for a in range(x):
            for b in range(x - a):
                coeff = math.comb(a + y - 1, y - 1) * math.comb(y - 1, b)
                raw.append((coeff, b, QZeta(Composition((y + a, x - a - b)))))
    for j in range(1, min(s, t) + 1):
        coeff = math.factorial(s + t - j - 1) // (
            math.factorial(s - j) * math.factorial(t - j) * math.factorial(j - 1)
        )
        raw.append((-coeff, j, Phi(s + t - j)))
    return IdentityInstance(
        kind="qdecomp",
        s=s,
        t=t,
        lhs=(QZeta(Composition((s,))), QZeta(Composition((t,)))),
        terms=_merged(raw),
    )


def stuffle_terms(s: int, t: int) -> IdentityInstance:
    """Index-merging product rule for zeta_q[s] zeta_q[t] (four terms)."""
    _require_st(s, t)
    raw = [
        (1, 0, QZeta(Composition((s, t)))),
        (1, 0, QZeta(Composition((t, s)))),
        (1, 0, QZeta(Composition((s + t,)))),
        (1, 1, QZeta(Composition((s + t - 1,)))),
    ]
    return IdentityInstance(
        kind="stuffle",
        s=s,
        t=t,
        lhs=(QZeta(Composition((s,))), QZeta(Composition((t,)))),
        terms=_merged(raw),
    )


def build_identity(kind: str, s: int, t: int) -> IdentityInstance:
    builders = {"euler": euler_terms, "qdecomp": q_euler_terms, "stuffle": stuffle_terms}
    if kind not in builders:
        raise ValueError(f"unknown identity kind {kind!r}")
    return builders[kind](s, t)


# --------------------------------------------------------------------------
# Enclosure evaluation


def _eval_relaxed(target, q, tol, cap, engine) -> SeriesResult:
    """Evaluate a target, relaxing tolerance when the truncation cap bites.

    A cap hit never produces a wrong enclosure - only a wider one, which the
    status logic then reports as inconclusive rather than verified.
    """
    attempt = tol
    while True:
        try:
            return evaluate_target(target, q, attempt, max_terms=cap, engine=engine)
        except TruncationLimitError:
            if attempt > _COARSE:
                raise
            attempt = attempt * 64


def sum_terms(
    terms,
    q,
    tol,
    *,
    max_terms: int = DEFAULT_MAX_TERMS,
    engine: str = "exact",
):
    """Enclosure of sum(coeff * (1-q)^eps * value(target)), width <= tol
    when no truncation cap interferes.  Returns (enclosure, max_truncation).

    Budget: tol is split equally across terms; each series is requested at
    its share divided by the exact |scalar| multiplying it.
    """
    if not terms:
        raise ValueError("empty term list")
    share = as_rational(tol) / len(terms)
    total = Enclosure.point(0)
    deepest = 0
    for term in terms:
        scalar = term.scalar(q)
        result = _eval_relaxed(term.target, q, share / abs(scalar), max_terms, engine)
        total = total + result.enclosure * scalar
        deepest = max(deepest, result.terms)
    return total, deepest


def _product_enclosure(lhs, q, tol, cap, engine):
    """Enclosure of value(lhs[0]) * value(lhs[1]) with width <= tol."""
    f1, f2 = lhs
    coarse1 = _eval_relaxed(f1, q, _COARSE, cap, engine).enclosure
    coarse2 = _eval_relaxed(f2, q, _COARSE, cap, engine).enclosure
    tol = as_rational(tol)
    # width(E1*E2) <= w1*hi2 + w2*hi1 for positive intervals; hi_i is at most
    # its coarse bound + 1, so a quarter-share per factor lands under tol.
    tol1 = tol / (4 * (coarse2.hi + 1))
    tol2 = tol / (4 * (coarse1.hi + 1))
    r1 = _eval_relaxed(f1, q, tol1, cap, engine)
    r2 = _eval_relaxed(f2, q, tol2, cap, engine)
    return r1.enclosure * r2.enclosure, max(r1.terms, r2.terms)


def evaluate_identity(
    inst: IdentityInstance,
    q=None,
    tol=Rational(1, 10**12),
    *,
    max_terms: int = DEFAULT_MAX_TERMS,
    engine: str = "exact",
) -> VerificationReport:
    """Certified comparison of both sides of an identity instance.

    The tolerance is split into equal shares for the LHS product and each
    RHS term, so both reported enclosures have width <= tol whenever the
    truncation cap allows it.
    """
    tol = as_rational(tol)
    if tol <= 0:
        raise ValueError("tol must be > 0")
    if inst.is_classical():
        if q is not None:
            raise ValueError("classical identity takes no q")
    else:
        if q is None:
            raise ValueError(f"{inst.label()} requires a q parameter")
        q = as_rational(q)
    share = tol / (len(inst.terms) + 1)
    lhs_enc, lhs_n = _product_enclosure(inst.lhs, q, share, max_terms, engine)
    rhs_enc, rhs_n = sum_terms(
        inst.terms, q, tol - share, max_terms=max_terms, engine=engine
    )
    return VerificationReport(
        identity=inst,
        q=q,
        tol=tol,
        lhs_enclosure=lhs_enc,
        rhs_enclosure=rhs_enc,
        status=_status(lhs_enc, rhs_enc, tol),
        max_truncation=max(lhs_n, rhs_n),
    )


def cross_check(
    s: int,
    t: int,
    q,
    tol=Rational(1, 10**12),
    *,
    max_terms: int = DEFAULT_MAX_TERMS,
    engine: str = "exact",
) -> VerificationReport:
    """Compare the two independent RHS expansions of the same product.

    Both the decomposition RHS and the stuffle RHS equal zeta_q[s] zeta_q[t],
    so their enclosures must intersect.  The report carries the decomposition
    RHS as lhs_enclosure and the stuffle RHS as rhs_enclosure.
    """
    q = as_rational(q)
    tol = as_rational(tol)
    if tol <= 0:
        raise ValueError("tol must be > 0")
    qd = q_euler_terms(s, t)
    st = stuffle_terms(s, t)
    lhs_enc, n1 = sum_terms(qd.terms, q, tol, max_terms=max_terms, engine=engine)
    rhs_enc, n2 = sum_terms(st.terms, q, tol, max_terms=max_terms, engine=engine)
    return VerificationReport(
        identity=qd,
        q=q,
        tol=tol,
        lhs_enclosure=lhs_enc,
        rhs_enclosure=rhs_enc,
        status=_status(lhs_enc, rhs_enc, tol),
        max_truncation=max(n1, n2),
    )


# --------------------------------------------------------------------------
# Rearrangement cross-check: the double sums over u + v = n


def _inv_bracket_ints(alpha: int, n_pow_num, n_pow_den, p, r):
    """(num, den) of 1/[n]^alpha given p^n, r^n for q = p/r:
    1/[n] = r^(n-1) (r - p) / (r^n - p^n)."""
    num = n_pow_den**alpha * (r - p) ** alpha
    den = r**alpha * (n_pow_den - n_pow_num) ** alpha
    return num, den


def proof_sum_S(s: int, t: int, a: int, b: int, q, N: int) -> Rational:
    """Exact truncated double sum S[s,t,a,b] over pairs u + v = n <= N.

    Summand, straight from the substituted kernel identity:

        q^((s-1)u) q^((t-1)v) q^((t-1-b)u) q^(a v)
        -----------------------------------------     (u, v >= 1)
              [u]^(s-a-b)  [u+v]^(t+a)

    Grouping the v-dependent powers along a diagonal (v = n - u) gives a
    u-weight q^((s-1)+(t-1-b)-(t-1+a))u / [u]^(s-a-b) and a per-diagonal
    factor q^((t-1+a)n)/[n]^(t+a), i.e. a two-position nested sum over
    n > u, which the balanced subword merge sums exactly.  The result is
    exactly the pair-by-pair double sum (tested against a literal double
    loop at small N).
    """
    q = as_rational(q)
    alpha = s - a - b  # inner power
    beta = t + a  # diagonal power
    e_u = (s - 1) + (t - 1 - b) - (t - 1 + a)  # u-exponent after regrouping
    e_n = (t - 1) + a  # diagonal exponent
    if alpha < 1 or beta < 2:
        raise ValueError("indices leave the double-sum region")
    if N < 2:
        return Rational(0)
    p, r = q.numerator, q.denominator

    def leaf(k):
        p_pow = p**k
        r_pow = r**k
        ib_num, ib_den = _inv_bracket_ints(beta, p_pow, r_pow, p, r)
        dg = (p_pow**e_n * ib_num, r_pow**e_n * ib_den)
        wt = (
            p_pow**e_u * r_pow ** (alpha - e_u) * (r - p) ** alpha,
            r**alpha * (r_pow - p_pow) ** alpha,
        )
        return [dg[0], wt[0]], [dg[1], wt[1]]

    sums, den = _dnc_node(2, leaf, 1, N)
    return Rational(sums[(0, 2)], den)


def proof_sum_T(s: int, t: int, j: int, q, N: int) -> Rational:
    """Exact truncated double sum T[s,t,j] over pairs u + v = n <= N.

    Summand: q^((s-1)u) q^((t-1)v) q^((t-j)u) q^((s-j)v) / [u+v]^(s+t-j).
    Both combined exponents equal (s+t-j-1), so each diagonal contributes an
    explicit inner sum of (n-1) numerator products; the per-pair products
    are still formed one by one.
    """
    q = as_rational(q)
    w = s + t - j
    e1 = (s - 1) + (t - j)  # exponent on the u side
    e2 = (t - 1) + (s - j)  # exponent on the v side
    p, r = q.numerator, q.denominator
    step1, step2 = p**e1, p**e2
    pe1 = [1]  # p^(e1 u)
    pe2 = [1]  # p^(e2 v)
    for _ in range(N):
        pe1.append(pe1[-1] * step1)
        pe2.append(pe2[-1] * step2)
    p_pow = r_pow = 1
    diagonals = []
    for n in range(1, N + 1):
        p_pow *= p
        r_pow *= r
        if n < 2:
            continue
        inner = 0
        for u in range(1, n):
            inner += pe1[u] * pe2[n - u]
        # shared diagonal denominator: r^(e1 n) from the q-powers (e1 = e2),
        # and [n]^w
        ib_num, ib_den = _inv_bracket_ints(w, p_pow, r_pow, p, r)
        diagonals.append(Rational(inner * ib_num, r_pow**e1 * ib_den))
    return exact_sum(diagonals)


@dataclass(frozen=True)
class ProofSumCheck:
    """Outcome of one double-sum vs series-enclosure comparison."""

    label: str
    value: Rational
    low: Rational  # enclosure lo minus truncation slack
    high: Rational  # enclosure hi
    slack: Rational
    ok: bool


@dataclass(frozen=True)
class ProofSumReport:
    s: int
    t: int
    a: int
    b: int
    j: int
    q: Rational
    N: int
    s_check: ProofSumCheck
    t_check: ProofSumCheck
    status: str  # verified | violated
    max_truncation: int


def verify_proof_sums(
    s: int,
    t: int,
    a: int,
    b: int,
    j: int,
    q,
    N: int,
    *,
    max_terms: int = DEFAULT_MAX_TERMS,
) -> ProofSumReport:
    """Check the rearrangements S[s,t,a,b] = zeta_q[t+a, s-a-b] and
    T[s,t,j] = phi_q[s+t-j] numerically at truncation N.

    Each truncated double sum omits exactly the diagonals n > N of the
    rearranged series, so it must lie in [lo - tail(N), hi] where [lo, hi]
    encloses the full series value and tail(N) is the proven tail bound.
    """
    _require_st(s, t)
    if not 0 <= a <= s - 1:
        raise ValueError(f"a must lie in [0, {s - 1}], got {a}")
    if not 0 <= b <= s - 1 - a:
        raise ValueError(f"b must lie in [0, {s - 1 - a}], got {b}")
    if not 1 <= j <= min(s, t):
        raise ValueError(f"j must lie in [1, {min(s, t)}], got {j}")
    if N < 2:
        raise ValueError("N must be >= 2")
    q = as_rational(q)

    # The comparison enclosure only needs to be sharp relative to the slack,
    # and never needs more than ~30 decimal digits to make the check strict.
    floor = Rational(1, 2**100)

    s_comp = Composition((t + a, s - a - b))
    s_value = proof_sum_S(s, t, a, b, q, N)
    s_slack = qzeta_tail_bound(s_comp, q, N, max_terms=max_terms)
    s_tol = min(max(s_slack / 4, floor), _COARSE)
    s_result = _eval_relaxed(QZeta(s_comp), q, s_tol, max_terms, "exact")
    s_enc = s_result.enclosure
    s_check = ProofSumCheck(
        label=f"S[{s},{t},{a},{b}] vs {QZeta(s_comp).label()}",
        value=s_value,
        low=s_enc.lo - s_slack,
        high=s_enc.hi,
        slack=s_slack,
        ok=bool(s_enc.lo - s_slack <= s_value <= s_enc.hi),
    )

    w = s + t - j
    t_value = proof_sum_T(s, t, j, q, N)
    t_slack = phi_tail_bound(w, q, N)
    t_tol = min(max(t_slack / 4, floor), _COARSE)
    t_result = _eval_relaxed(Phi(w), q, t_tol, max_terms, "exact")
    t_enc = t_result.enclosure
    t_check = ProofSumCheck(
        label=f"T[{s},{t},{j}] vs {Phi(w).label()}",
        value=t_value,
        low=t_enc.lo - t_slack,
        high=t_enc.hi,
        slack=t_slack,
        ok=bool(t_enc.lo - t_slack <= t_value <= t_enc.hi),
    )

    return ProofSumReport(
        s=s,
        t=t,
        a=a,
        b=b,
        j=j,
        q=q,
        N=N,
        s_check=s_check,
        t_check=t_check,
        status="verified" if (s_check.ok and t_check.ok) else "violated",
        max_truncation=max(N, s_result.terms, t_result.terms),
    )
