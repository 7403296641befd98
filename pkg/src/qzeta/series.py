"""Nested q-series and classical zeta series as certified enclosures.

The central objects are sums over strictly decreasing index tuples

    zeta_q[s1,...,sm] = sum_{k1 > k2 > ... > km >= 1}
                        prod_j q^((sj - 1) kj) / [kj]^sj,      0 < q < 1,

with [k] = (1 - q^k)/(1 - q) the q-integer, together with the weighted
depth-one companion

    phi_q[s] = sum_{n >= 1} (n - 1) q^((s-1) n) / [n]^s,       s >= 2,

and the classical limits zeta(s) and zeta(s, t) obtained at q -> 1.  A
composition is admissible when its first exponent is >= 2; that makes the
outer geometric ratio q^(s1-1) < 1 and the series converges.

Every public evaluator returns an ``Enclosure``: an exact partial sum plus a
proven bound on the discarded tail.  Tail bounds are closed-form rationals
(geometric and power-weighted geometric sums; two-sided integral tests for
the classical series) - docs/tail_bounds.md carries the derivations.

The exact engine and the oracle ``zeta_q_bruteforce`` share one balanced
divide-and-conquer summer, so comparing them checks tail bounds and
truncation choices, not the summer; the summer itself is pinned against
literal nested loops in the tests, and the fixed-precision dyadic engine
provides a structurally different arithmetic route at every scale.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

from .enclosure import DyadicContext, Enclosure
from .scalars import ONE, Rational, as_rational, pow2_floor

DEFAULT_MAX_TERMS = 10**6

_COARSE_TOL = Rational(1, 8)


class TruncationLimitError(Exception):
    """Requested tolerance needs more summands than the configured cap."""

    def __init__(self, what: str, cap: int):
        super().__init__(
            f"{what}: tolerance unreachable within {cap} summands; "
            "raise the truncation cap or relax the tolerance"
        )
        self.what = what
        self.cap = cap


@dataclass(frozen=True)
class Composition:
    """Exponent tuple (s1, ..., sm) of a nested zeta-type sum."""

    exponents: tuple

    def __post_init__(self):
        exps = tuple(int(e) for e in self.exponents)
        if not exps:
            raise ValueError("composition must be nonempty")
        if any(e < 1 for e in exps):
            raise ValueError(f"composition entries must be >= 1, got {exps}")
        object.__setattr__(self, "exponents", exps)

    @classmethod
    def coerce(cls, value) -> "Composition":
        if isinstance(value, Composition):
            return value
        if isinstance(value, int):
            return cls((value,))
        if isinstance(value, str):
            return cls.parse(value)
        return cls(tuple(value))

    @classmethod
    def parse(cls, text: str) -> "Composition":
        parts = [p for p in text.replace(",", " ").split() if p]
        if not parts or not all(p.lstrip("+-").isdigit() for p in parts):
            raise ValueError(f"malformed composition: {text!r}")
        return cls(tuple(int(p) for p in parts))

    @property
    def depth(self) -> int:
        return len(self.exponents)

    @property
    def weight(self) -> int:
        return sum(self.exponents)

    @property
    def is_admissible(self) -> bool:
        return self.exponents[0] >= 2

    def require_admissible(self) -> None:
        if not self.is_admissible:
            raise ValueError("inadmissible composition: s1 must be >= 2")

    def __str__(self):
        return ",".join(str(e) for e in self.exponents)


# --------------------------------------------------------------------------
# Evaluation targets (shared with the identity layer)


@dataclass(frozen=True)
class QZeta:
    comp: Composition

    def label(self) -> str:
        return f"zeta_q[{self.comp}]"

    def sort_key(self):
        return (0, self.comp.exponents)


@dataclass(frozen=True)
class Phi:
    s: int

    def label(self) -> str:
        return f"phi_q[{self.s}]"

    def sort_key(self):
        return (1, (self.s,))


@dataclass(frozen=True)
class ClassicalZeta:
    comp: Composition

    def label(self) -> str:
        return f"zeta({self.comp})"

    def sort_key(self):
        return (2, self.comp.exponents)


def _validate_q(q):
    q = as_rational(q)
    if not (0 < q < 1):
        raise ValueError(f"q must satisfy 0 < q < 1, got {q}")
    return q


def _validate_tol(tol):
    tol = as_rational(tol)
    if tol <= 0:
        raise ValueError(f"tolerance must be positive, got {tol}")
    return tol


def q_integer(k: int, q):
    """The q-integer [k] = 1 + q + ... + q^(k-1) = (1 - q^k)/(1 - q)."""
    if k < 1:
        raise ValueError(f"q_integer needs k >= 1, got {k}")
    q = _validate_q(q)
    return (1 - q**k) / (1 - q)


# --------------------------------------------------------------------------
# Exact closed-form tail sums


@lru_cache(maxsize=None)
def _stirling2(n: int, k: int) -> int:
    if n == k == 0:
        return 1
    if n == 0 or k == 0:
        return 0
    return k * _stirling2(n - 1, k) + _stirling2(n - 1, k - 1)


def _geometric_moment(j: int, r):
    """G_j(r) = sum_{d >= 0} d^j r^d, exact, for 0 < r < 1."""
    one_minus = 1 - r
    if j == 0:
        return 1 / one_minus
    total = Rational(0)
    r_pow = ONE
    for i in range(1, j + 1):
        r_pow = r_pow * r
        total += _stirling2(j, i) * math.factorial(i) * r_pow / one_minus ** (i + 1)
    return total


def _tail_power_sum(L: int, r, N: int):
    """T_L(N, r) = sum_{n > N} (n-1)^L r^n, exact closed form.

    Shift n = i + 1 and expand (N + d)^L binomially:
        T_L = r * r^N * sum_j C(L, j) N^(L-j) G_j(r).
    """
    total = Rational(0)
    for j in range(L + 1):
        total += math.comb(L, j) * Rational(N) ** (L - j) * _geometric_moment(j, r)
    return r ** (N + 1) * total


def _smallest_n(ok, start: int, cap: int, what: str) -> int:
    """Smallest n >= start with ok(n) true; ok must be monotone in n."""
    n = max(start, 1)
    if ok(n):
        return n
    while not ok(n):
        if n >= cap:
            raise TruncationLimitError(what, cap)
        n = min(2 * n, cap)
    lo, hi = n // 2, n
    while lo + 1 < hi:
        mid = (lo + hi) // 2
        if mid < start:
            lo = mid
            continue
        if ok(mid):
            hi = mid
        else:
            lo = mid
    return hi


# --------------------------------------------------------------------------
# Exact partial-sum engine (balanced divide-and-conquer)


def _term_ints(s: int, a_pow, b_pow, a, b):
    """(num, den) integers with num/den = q^((s-1)k) / [k]^s at q = a/b.

    Uses [k] = (b^k - a^k) / (b^(k-1) (b-a)), so
        q^((s-1)k)/[k]^s = a^((s-1)k) (b-a)^s b^k / (b^s (b^k - a^k)^s).
    a_pow, b_pow are the running values a^k, b^k.
    """
    num = a_pow ** (s - 1) * (b - a) ** s * b_pow
    den = b**s * (b_pow - a_pow) ** s
    return num, den


def _qseries_partial(exps, q, N: int, phi_weight: bool = False):
    """Exact sum over k1 > ... > km, k1 <= N of the defining terms.

    With phi_weight the depth must be 1 and each term carries an extra
    (k - 1) factor.  An earlier version grew one running common denominator
    term by term; that re-multiplies the accumulated ~10^N-scale integers on
    every step, which is quadratic in N and was the dominant cost of every
    enclosure.  Balanced splitting does the same exact sum with big-by-big
    multiplications instead.
    """
    m = len(exps)
    if N < m:
        return Rational(0)
    a, b = q.numerator, q.denominator

    def leaf(k):
        a_pow = a**k
        b_pow = b**k
        nums = []
        dens = []
        for s in exps:
            n_i, d_i = _term_ints(s, a_pow, b_pow, a, b)
            if phi_weight:
                n_i *= k - 1
            nums.append(n_i)
            dens.append(d_i)
        return nums, dens

    sums, den = _dnc_node(m, leaf, 1, N)
    return Rational(sums[(0, m)], den)


def _dnc_node(m: int, leaf, lo: int, hi: int):
    """Nested sums of every contiguous subword over indices in [lo, hi].

    ``leaf(k)`` gives the per-position term as parallel (nums, dens) lists at
    index k.  Returns (sums, den) with sums[(i, j)] / den equal to the sum
    over hi >= k_(i+1) > ... > k_j >= lo of the product of positions i..j-1.
    Balanced splitting keeps the integer multiplications big-by-big, which is
    far cheaper than growing one running denominator term by term.
    """
    if lo == hi:
        nums, dens = leaf(lo)
        den = 1
        for d_i in dens:
            den *= d_i
        sums = {}
        for i in range(m):
            sums[(i, i + 1)] = nums[i] * (den // dens[i])
        for span in range(2, m + 1):
            for i in range(m - span + 1):
                sums[(i, i + span)] = 0  # needs two distinct indices
        return sums, den
    mid = (lo + hi) // 2
    left_sums, left_den = _dnc_node(m, leaf, lo, mid)
    right_sums, right_den = _dnc_node(m, leaf, mid + 1, hi)
    den = left_den * right_den
    sums = {}
    for span in range(1, m + 1):
        for i in range(m - span + 1):
            j = i + span
            total = left_sums[(i, j)] * right_den + right_sums[(i, j)] * left_den
            # split: positions i..p-1 take indices from the right half
            # (larger values), positions p..j-1 from the left half
            for p in range(i + 1, j):
                total += right_sums[(i, p)] * left_sums[(p, j)]
            sums[(i, j)] = total
    return sums, den


def _classical_partial(exps, N: int):
    """Exact partial sum of zeta(s) or zeta(s, t) up to outer index N.

    Returns (partial, inner_prefix_at_N) - the inner prefix (sum of 1/k^t for
    k <= N, or None at depth 1) feeds the t = 1 tail bound, which needs H_N.
    """
    m = len(exps)

    def leaf(k):
        return [1] * m, [k**s for s in exps]

    sums, den = _dnc_node(m, leaf, 1, N)
    partial = Rational(sums[(0, m)], den)
    inner = Rational(sums[(1, 2)], den) if m == 2 else None
    return partial, inner


# --------------------------------------------------------------------------
# q-series enclosures


class SeriesResult(NamedTuple):
    enclosure: Enclosure
    terms: int


def _tol_key(tol):
    """Round a tolerance down to a power of two (cache-friendly, only tightens)."""
    return pow2_floor(tol)[1]


def _compress(enc: Enclosure, tol) -> Enclosure:
    """Outward-round endpoints onto a dyadic grid a few bits inside tol.

    Adds at most tol/4 of width (grid step tol/8, both endpoints), so a
    tail budget of tol/2 still closes under tol.  Without this, interval
    sums over a dozen series drag the partial sums' huge denominators
    through every addition.
    """
    e, _ = pow2_floor(tol)
    return enc.outward(max(8, 3 - e))


def _inner_profile(rest):
    """(L, suffix) with the inner partial sum bounded by U * C(n-1, L).

    rest is the composition minus its first exponent.  Factors with exponent
    1 satisfy q^0/[k] <= 1, so each of the L leading ones contributes one
    free index below n; the remaining suffix (which starts with an exponent
    >= 2, hence is admissible) is bounded uniformly by its full value.
    """
    L = 0
    while L < len(rest) and rest[L] == 1:
        L += 1
    return L, rest[L:]


def _qzeta_tail_factory(exps, q, cap):
    """Returns tail(N): a proven upper bound for the discarded outer tail."""
    s1 = exps[0]
    L, suffix = _inner_profile(exps[1:])
    if suffix:
        upper = _qzeta_cached(suffix, q, _tol_key(_COARSE_TOL), cap)[0].hi
    else:
        upper = ONE
    r = q ** (s1 - 1)
    scale = upper / math.factorial(L)

    def tail(N: int):
        return scale * _tail_power_sum(L, r, N) / q_integer(N + 1, q) ** s1

    return tail


@lru_cache(maxsize=None)
def _qzeta_cached(exps, q, tol, cap):
    tail = _qzeta_tail_factory(exps, q, cap)
    budget = tol / 2
    N = _smallest_n(lambda n: tail(n) <= budget, len(exps), cap, f"zeta_q[{','.join(map(str, exps))}] at q={q}")
    partial = _qseries_partial(exps, q, N)
    return _compress(Enclosure(partial, partial + tail(N)), tol), N


def qzeta_tail_bound(comp, q, N: int, *, max_terms: int = DEFAULT_MAX_TERMS):
    """Proven upper bound on the series value minus its partial sum at N."""
    comp = Composition.coerce(comp)
    comp.require_admissible()
    q = _validate_q(q)
    return _qzeta_tail_factory(comp.exponents, q, int(max_terms))(int(N))


def phi_tail_bound(s: int, q, N: int):
    """Proven upper bound on the discarded tail of the weighted sum at N."""
    s = int(s)
    if s < 2:
        raise ValueError(f"phi_q needs s >= 2, got {s}")
    q = _validate_q(q)
    r = q ** (s - 1)
    return _tail_power_sum(1, r, N) / q_integer(N + 1, q) ** s


@lru_cache(maxsize=None)
def _phi_cached(s, q, tol, cap):
    def tail(N: int):
        return phi_tail_bound(s, q, N)

    budget = tol / 2
    N = _smallest_n(lambda n: tail(n) <= budget, 2, cap, f"phi_q[{s}] at q={q}")
    partial = _qseries_partial((s,), q, N, phi_weight=True)
    return _compress(Enclosure(partial, partial + tail(N)), tol), N


# --------------------------------------------------------------------------
# Classical enclosures (two-sided integral-test tails)


def _power_tail_enclosure(s: int, M: int) -> Enclosure:
    """Encloses T_s(M) = sum_{n > M} n^-s for s >= 2, M >= 1.

    Integral test both ways: the integral from M+1 bounds below, adding the
    first term bounds above, so the width is (M+1)^-s.
    """
    base = Rational(1, (M + 1) ** (s - 1)) / (s - 1)
    first = Rational(1, (M + 1) ** s)
    return Enclosure(base, base + first)


@lru_cache(maxsize=None)
def _classical_cached(exps, tol, cap):
    if len(exps) == 1:
        (s,) = exps

        def tail_enc(N: int) -> Enclosure:
            return _power_tail_enclosure(s, N)

        aux = None
    else:
        s, t = exps
        if t >= 2:
            inner_enc, _ = _classical_cached((t,), _tol_key(tol / 4), cap)

            def tail_enc(N: int) -> Enclosure:
                # R = zeta(t) T_s(N) - sum_{n>N} T_t(n-1)/n^s; the subtracted
                # sum is squeezed through T_t(n-1) ~ n^(1-t)/(t-1) + O(n^-t).
                q_lo = _power_tail_enclosure(s + t - 1, N).lo / (t - 1)
                q_hi = (
                    _power_tail_enclosure(s + t - 1, N).hi / (t - 1)
                    + _power_tail_enclosure(s + t, N).hi
                )
                return inner_enc * _power_tail_enclosure(s, N) - Enclosure(q_lo, q_hi)

            aux = None
        else:
            # t == 1: R = H_N T_s(N) + sum_{k>N} T_s(k)/k, and the second sum
            # P satisfies T_s(N+1)/(s-1) <= P <= (N+2)/(N+1) (T_s(N+1)/(s-1)
            # + T_(s+1)(N+1)) via 1/k vs 1/(k+1) comparisons.
            def tail_enc(N: int, H=None) -> Enclosure:
                if H is None:
                    # Solver phase only cares about the width, and H enters
                    # as a point factor in the final bound, so a point proxy
                    # at the crude bound H_N <= 1 + ln N < 1 + 0.7 bitlen(N)
                    # over-estimates the final width without inflating it by
                    # an extra T_s(N).
                    H_iv = Enclosure.point(1 + Rational(7, 10) * N.bit_length())
                else:
                    H_iv = Enclosure.point(H)
                ts = _power_tail_enclosure(s, N)
                inner1 = _power_tail_enclosure(s, N + 1)
                p_lo = inner1.lo / (s - 1)
                p_hi = (
                    Rational(N + 2, N + 1)
                    * (inner1.hi / (s - 1) + _power_tail_enclosure(s + 1, N + 1).hi)
                )
                return H_iv * ts + Enclosure(p_lo, p_hi)

            aux = "harmonic"

    budget = tol / 2
    label = f"zeta({','.join(map(str, exps))})"
    N = _smallest_n(lambda n: tail_enc(n).width <= budget, 2, cap, label)
    partial, inner_prefix = _classical_partial(exps, N)
    if aux == "harmonic":
        enc = tail_enc(N, H=inner_prefix) + partial
    else:
        enc = tail_enc(N) + partial
    return _compress(enc, tol), N


# --------------------------------------------------------------------------
# Dyadic-interval engine (for q within a hair of 1, where exact partial sums
# would carry ~1e8-digit denominators)


def _dyadic_tail_hi(ctx, exps, q_iv, upper, L, N):
    """Upper endpoint of the outer tail bound, evaluated in interval arith."""
    s1 = exps[0]
    r_iv = ctx.pow(q_iv, s1 - 1)
    one_minus_r = ctx.sub(ctx.interval(1), r_iv)
    if one_minus_r[0] <= 0:
        raise ValueError("geometric ratio not strictly below 1")
    inv_one_minus = ctx.recip(one_minus_r)
    # G_j(r) = sum_n n^j r^n / r^... moments of the geometric weight:
    # G_j = sum_{i<=j} S2(j, i) i! r^i / (1-r)^(i+1)
    r_pows = [ctx.interval(1)]
    inv_pows = [inv_one_minus]
    for _ in range(L):
        r_pows.append(ctx.mul(r_pows[-1], r_iv))
        inv_pows.append(ctx.mul(inv_pows[-1], inv_one_minus))
    gs = [inv_one_minus]
    for j in range(1, L + 1):
        acc = ctx.interval(0)
        for i in range(1, j + 1):
            piece = ctx.scale(
                ctx.mul(r_pows[i], inv_pows[i]),
                _stirling2(j, i) * math.factorial(i),
            )
            acc = ctx.add(acc, piece)
        gs.append(acc)
    # T_L(N, r) = r^(N+1) * sum_j C(L,j) N^(L-j) G_j(r)
    acc = ctx.interval(0)
    for j in range(L + 1):
        coeff = math.comb(L, j) * Rational(N) ** (L - j)
        acc = ctx.add(acc, ctx.scale(gs[j], coeff))
    t_l = ctx.mul(ctx.pow(q_iv, (N + 1) * (s1 - 1)), acc)
    # divide by [N+1]^s1:  [N+1] = (1 - q^(N+1)) / (1 - q)
    one_minus_q = ctx.sub(ctx.interval(1), q_iv)
    qn1 = ctx.pow(q_iv, N + 1)
    bracket = ctx.mul(ctx.sub(ctx.interval(1), qn1), ctx.recip(one_minus_q))
    inv_bracket_pow = ctx.recip(ctx.pow(bracket, s1))
    out = ctx.mul(ctx.mul(t_l, inv_bracket_pow), ctx.interval(upper))
    return out[1] / math.factorial(L)


def _dyadic_qseries(exps, q, tol, cap, phi_weight=False):
    """(Enclosure, N) for a q-series via outward-rounded interval sums."""
    q = _validate_q(q)
    tol = _validate_tol(tol)
    if phi_weight:
        L, upper = 1, ONE
    else:
        L, suffix = _inner_profile(exps[1:])
        upper = (
            _dyadic_qseries(suffix, q, _COARSE_TOL, cap)[0].hi if suffix else ONE
        )
    exp_bits = -pow2_floor(tol)[0]
    prec = max(64, exp_bits + 32)
    attempts = 0
    while True:
        ctx = DyadicContext(prec)
        q_iv = ctx.interval(q)

        def tail_hi(n, ctx=ctx, q_iv=q_iv):
            return _dyadic_tail_hi(ctx, exps, q_iv, upper, L, n)
        budget = tol / 2
        N = _smallest_n(lambda n: tail_hi(n) <= budget, len(exps), cap,
                        f"dyadic series at q={q}")
        inv_one_minus_q = 1 / (1 - q)  # exact scalar
        m = len(exps)
        prefix = [ctx.interval(0) for _ in range(m + 1)]
        prefix[m] = ctx.interval(1)
        q_pow = ctx.interval(1)
        for k in range(1, N + 1):
            q_pow = ctx.scale(q_pow, q)
            bracket = ctx.scale(ctx.sub(ctx.interval(1), q_pow), inv_one_minus_q)
            inv_br = ctx.recip(bracket)
            new_prefix = list(prefix)
            for j in range(m - 1, -1, -1):
                s = exps[j]
                w = ctx.mul(ctx.pow(q_pow, s - 1), ctx.pow(inv_br, s))
                if phi_weight:
                    w = ctx.scale(w, k - 1)
                new_prefix[j] = ctx.add(prefix[j], ctx.mul(w, prefix[j + 1]))
            prefix = new_prefix
        bound = tail_hi(N)
        enc = Enclosure(prefix[0][0], prefix[0][1] + bound)
        if enc.width <= tol:
            return enc, N
        attempts += 1
        if attempts > 6:
            raise RuntimeError("dyadic precision escalation failed to converge")
        prec += 64 + 32 * attempts


# --------------------------------------------------------------------------
# Brute-force oracle: exact divide-and-conquer over the index range


def zeta_q_bruteforce(comp, q, N: int):
    """Exact nested sum of the defining series with all indices <= N.

    No tail bound is attached; the value is monotone nondecreasing in N and
    always below the true series value.  This is the oracle the enclosure
    path is tested against.  Both now share the balanced summer, so what the
    comparison actually exercises is the tail bounds and truncation choices;
    the summer itself is pinned against literal nested loops in the tests.
    """
    comp = Composition.coerce(comp)
    comp.require_admissible()
    q = _validate_q(q)
    if N < 0:
        raise ValueError("N must be >= 0")
    if N < comp.depth:
        return Rational(0)
    q_num, q_den = q.numerator, q.denominator

    def leaf(k):
        a_pow = q_num**k
        b_pow = q_den**k
        nums = []
        dens = []
        for s in comp.exponents:
            n_i, d_i = _term_ints(s, a_pow, b_pow, q_num, q_den)
            nums.append(n_i)
            dens.append(d_i)
        return nums, dens

    sums, den = _dnc_node(comp.depth, leaf, 1, N)
    return Rational(sums[(0, comp.depth)], den)


# --------------------------------------------------------------------------
# Public evaluators


def zeta_q(comp, q, tol, *, max_terms: int = DEFAULT_MAX_TERMS) -> Enclosure:
    """Certified enclosure of zeta_q[comp] at 0 < q < 1, width <= tol."""
    return eval_qzeta(comp, q, tol, max_terms=max_terms).enclosure


def eval_qzeta(comp, q, tol, *, max_terms: int = DEFAULT_MAX_TERMS) -> SeriesResult:
    comp = Composition.coerce(comp)
    comp.require_admissible()
    q = _validate_q(q)
    tol = _validate_tol(tol)
    enc, terms = _qzeta_cached(comp.exponents, q, _tol_key(tol), int(max_terms))
    return SeriesResult(enc, terms)


def phi_q(s: int, q, tol, *, max_terms: int = DEFAULT_MAX_TERMS) -> Enclosure:
    """Certified enclosure of phi_q[s] = sum (n-1) q^((s-1)n)/[n]^s, s >= 2."""
    return eval_phi(s, q, tol, max_terms=max_terms).enclosure


def eval_phi(s: int, q, tol, *, max_terms: int = DEFAULT_MAX_TERMS) -> SeriesResult:
    s = int(s)
    if s < 2:
        raise ValueError(f"phi_q needs s >= 2, got {s}")
    q = _validate_q(q)
    tol = _validate_tol(tol)
    enc, terms = _phi_cached(s, q, _tol_key(tol), int(max_terms))
    return SeriesResult(enc, terms)


def zeta_classical(comp, tol, *, max_terms: int = DEFAULT_MAX_TERMS) -> Enclosure:
    """Certified enclosure of zeta(s) or zeta(s, t); depth > 2 is rejected."""
    return eval_classical(comp, tol, max_terms=max_terms).enclosure


def eval_classical(comp, tol, *, max_terms: int = DEFAULT_MAX_TERMS) -> SeriesResult:
    comp = Composition.coerce(comp)
    comp.require_admissible()
    if comp.depth > 2:
        raise ValueError("classical evaluation supports depth <= 2 only")
    tol = _validate_tol(tol)
    enc, terms = _classical_cached(comp.exponents, _tol_key(tol), int(max_terms))
    return SeriesResult(enc, terms)


def eval_qzeta_dyadic(comp, q, tol, *, max_terms: int = DEFAULT_MAX_TERMS) -> SeriesResult:
    """Like eval_qzeta but on the fixed-precision engine (q -> 1 sweeps)."""
    comp = Composition.coerce(comp)
    comp.require_admissible()
    enc, terms = _dyadic_qseries(comp.exponents, q, as_rational(tol), int(max_terms))
    return SeriesResult(enc, terms)


def eval_phi_dyadic(s: int, q, tol, *, max_terms: int = DEFAULT_MAX_TERMS) -> SeriesResult:
    if int(s) < 2:
        raise ValueError(f"phi_q needs s >= 2, got {s}")
    enc, terms = _dyadic_qseries((int(s),), q, as_rational(tol), int(max_terms), phi_weight=True)
    return SeriesResult(enc, terms)


def evaluate_target(target, q, tol, *, max_terms: int = DEFAULT_MAX_TERMS,
                    engine: str = "exact") -> SeriesResult:
    """Dispatch a QZeta / Phi / ClassicalZeta target to its evaluator."""
    if isinstance(target, ClassicalZeta):
        return eval_classical(target.comp, tol, max_terms=max_terms)
    if q is None:
        raise ValueError(f"target {target.label()} needs a q parameter")
    if engine == "exact":
        if isinstance(target, QZeta):
            return eval_qzeta(target.comp, q, tol, max_terms=max_terms)
        if isinstance(target, Phi):
            return eval_phi(target.s, q, tol, max_terms=max_terms)
    elif engine == "dyadic":
        if isinstance(target, QZeta):
            return eval_qzeta_dyadic(target.comp, q, tol, max_terms=max_terms)
        if isinstance(target, Phi):
            return eval_phi_dyadic(target.s, q, tol, max_terms=max_terms)
    else:
        raise ValueError(f"unknown engine {engine!r}")
    raise TypeError(f"unknown evaluation target: {target!r}")
