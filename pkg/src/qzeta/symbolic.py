"""Exact verification of the kernel decomposition of 1/(x^s y^t).

The object of study is the three-part expansion of 1/(x^s y^t) over the
kernel D = x + y + (q-1)xy:

    1/(x^s y^t) = sum_(a,b)  C(a+t-1, t-1) C(t-1, b)
                  (1-q)^b (1+(q-1)y)^a (1+(q-1)x)^(t-1-b)
                  / (x^(s-a-b) D^(t+a))                     [a+b < s]
                + the same with (x, s) and (y, t) exchanged
                - sum_j  (s+t-j-1)!/((s-j)! (t-j)! (j-1)!)
                  (1-q)^j (1+(q-1)y)^(s-j) (1+(q-1)x)^(t-j)
                  / D^(s+t-j)                               [1 <= j <= min(s,t)]

Everything here is exact polynomial arithmetic: identities are checked by
clearing the denominators with the single multiplier x^s y^t D^(s+t) and
comparing the resulting polynomials coefficient by coefficient.  (The
rational-function identity implies the pointwise one everywhere off the
variety x y D = 0, a measure-zero set.)

Three independent routes to the same object are implemented, which is what
the test suite leans on:

* ``build_lemma``              - direct assembly from the closed form;
* ``derive_lemma_by_operator`` - repeated signed differentiation of the seed
                                 identity 1/(xy) = (1/x + 1/y + q - 1)/D;
* ``verify_q1_reduction`` / ``verify_parfrac`` - the q = 1 specialization
  and its equivalent one-variable-shifted partial-fraction form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .poly import (
    ONE_POLY,
    Q,
    X,
    Y,
    FractionSum,
    MultiPoly,
    RationalFunction,
    rf_equal,
)
from .scalars import Rational

KERNEL = X + Y + (Q - 1) * X * Y  # D
_EPS = ONE_POLY - Q  # (1 - q)
_UX = ONE_POLY + (Q - 1) * X  # becomes q^u under x = [u]_q
_UY = ONE_POLY + (Q - 1) * Y  # becomes q^v under y = [v]_q


@dataclass(frozen=True)
class LemmaTerm:
    """One structured summand of the decomposition's right-hand side.

    value = coeff * (1-q)^eps_pow * (1+(q-1)y)^uy_pow * (1+(q-1)x)^ux_pow
            / (x^x_pow * y^y_pow * D^d_pow)
    """

    part: str  # first | second | third
    coeff: int
    eps_pow: int
    uy_pow: int
    ux_pow: int
    x_pow: int
    y_pow: int
    d_pow: int

    def numerator(self) -> MultiPoly:
        return (
            MultiPoly.const(self.coeff)
            * _EPS**self.eps_pow
            * _UY**self.uy_pow
            * _UX**self.ux_pow
        )


def _check_st(s: int, t: int):
    if s < 1 or t < 1:
        raise ValueError(f"s and t must be positive integers, got ({s}, {t})")


def lemma_terms(s: int, t: int):
    """Structured RHS terms, enumerating the full (a, b) triangles.

    The first triangle has s(s+1)/2 lattice points, the second t(t+1)/2,
    the correction sum min(s, t); points whose binomial vanishes still get
    emitted (with coeff 0) so the bookkeeping is inspectable.
    """
    _check_st(s, t)
    out = []
    for a in range(s):
        for b in range(s - a):
            out.append(
                LemmaTerm(
                    part="first",
                    coeff=math.comb(a + t - 1, t - 1) * math.comb(t - 1, b),
                    eps_pow=b,
                    uy_pow=a,
                    ux_pow=t - 1 - b,
                    x_pow=s - a - b,
                    y_pow=0,
                    d_pow=t + a,
                )
            )
    for a in range(t):
        for b in range(t - a):
            out.append(
                LemmaTerm(
                    part="second",
                    coeff=math.comb(a + s - 1, s - 1) * math.comb(s - 1, b),
                    eps_pow=b,
                    uy_pow=s - 1 - b,
                    ux_pow=a,
                    x_pow=0,
                    y_pow=t - a - b,
                    d_pow=s + a,
                )
            )
    for j in range(1, min(s, t) + 1):
        out.append(
            LemmaTerm(
                part="third",
                coeff=-(
                    math.factorial(s + t - j - 1)
                    // (math.factorial(s - j) * math.factorial(t - j) * math.factorial(j - 1))
                ),
                eps_pow=j,
                uy_pow=s - j,
                ux_pow=t - j,
                x_pow=0,
                y_pow=0,
                d_pow=s + t - j,
            )
        )
    return out


def _rhs_fraction_sum(s: int, t: int) -> FractionSum:
    fs = FractionSum((X, Y, KERNEL))
    for term in lemma_terms(s, t):
        if term.coeff:
            fs.add_term((term.x_pow, term.y_pow, term.d_pow), term.numerator())
    return fs


def _lhs_fraction_sum(s: int, t: int) -> FractionSum:
    fs = FractionSum((X, Y, KERNEL))
    fs.add_term((s, t, 0), ONE_POLY)
    return fs


def _cleared(fs: FractionSum, clear_exps) -> MultiPoly:
    """fs multiplied by prod(bases[i]^clear_exps[i]), as a polynomial."""
    powers = []
    for g, top in zip(fs.bases, clear_exps):
        row = [ONE_POLY]
        for _ in range(top):
            row.append(row[-1] * g)
        powers.append(row)
    total = MultiPoly()
    for exps, num in fs.terms.items():
        if any(e > c for e, c in zip(exps, clear_exps)):
            raise ValueError("clearing exponents too small for this term")
        cof = num
        for i, e in enumerate(exps):
            cof = cof * powers[i][clear_exps[i] - e]
        total = total + cof
    return total


@dataclass(frozen=True)
class LemmaInstance:
    s: int
    t: int
    lhs: RationalFunction
    rhs: RationalFunction


def build_lemma(s: int, t: int) -> LemmaInstance:
    """Both sides of the decomposition of 1/(x^s y^t) as rational functions."""
    _check_st(s, t)
    lhs = RationalFunction(ONE_POLY, X**s * Y**t)
    rhs = _rhs_fraction_sum(s, t).to_rational_function()
    return LemmaInstance(s=s, t=t, lhs=lhs, rhs=rhs)


def verify_lemma(s: int, t: int) -> bool:
    """Exact check: both sides times x^s y^t D^(s+t) are equal polynomials."""
    _check_st(s, t)
    clear = (s, t, s + t)
    return _cleared(_lhs_fraction_sum(s, t), clear) == _cleared(
        _rhs_fraction_sum(s, t), clear
    )


# --------------------------------------------------------------------------
# Operator route


SEED_LHS = RationalFunction(ONE_POLY, X * Y)


def _seed_rhs_fraction_sum() -> FractionSum:
    """(1/x + 1/y + q - 1) / D as a fraction sum over bases (x, y, D)."""
    fs = FractionSum((X, Y, KERNEL))
    fs.add_term((1, 0, 1), ONE_POLY)
    fs.add_term((0, 1, 1), ONE_POLY)
    fs.add_term((0, 0, 1), Q - 1)
    return fs


def apply_operator(fs: FractionSum, s: int, t: int) -> FractionSum:
    """(1/(s-1)!) (-d/dx)^(s-1) (1/(t-1)!) (-d/dy)^(t-1) applied to fs."""
    _check_st(s, t)
    out = fs
    for _ in range(s - 1):
        out = out.diff("x")
    for _ in range(t - 1):
        out = out.diff("y")
    sign = 1 if (s + t) % 2 == 0 else -1
    scale = Rational(sign, math.factorial(s - 1) * math.factorial(t - 1))
    return out.scaled(scale)


def derive_lemma_by_operator(s: int, t: int) -> RationalFunction:
    """RHS of the decomposition obtained by differentiating the seed identity.

    Agreement with build_lemma(s, t).rhs under rf_equal is the regression
    check on the whole derivation (signs, factorials, kernel derivatives).
    """
    return apply_operator(_seed_rhs_fraction_sum(), s, t).to_rational_function()


def operator_applied_to_seed_lhs(s: int, t: int) -> RationalFunction:
    """The operator applied to 1/(xy); must equal 1/(x^s y^t) exactly."""
    fs = FractionSum((X, Y, KERNEL))
    fs.add_term((1, 1, 0), ONE_POLY)
    return apply_operator(fs, s, t).to_rational_function()


def verify_seed_identity() -> bool:
    """1/(xy) = (1/x + 1/y + q - 1)/D as rational functions."""
    return rf_equal(SEED_LHS, _seed_rhs_fraction_sum().to_rational_function())


# --------------------------------------------------------------------------
# q = 1 reduction and the partial-fraction identity


def _q1_target_fraction_sum(s: int, t: int) -> FractionSum:
    """sum_a C(a+t-1,t-1)/(x^(s-a) (x+y)^(t+a)) + the (s,t)-swapped sum,
    over bases (x, y, x+y)."""
    fs = FractionSum((X, Y, X + Y))
    for a in range(s):
        fs.add_term((s - a, 0, t + a), math.comb(a + t - 1, t - 1))
    for a in range(t):
        fs.add_term((0, t - a, s + a), math.comb(a + s - 1, s - 1))
    return fs


def _substitute_fs(fs: FractionSum, new_bases, **vals) -> FractionSum:
    """Carry a fraction sum to new bases, substituting into the numerators."""
    out = FractionSum(new_bases)
    for exps, num in fs.terms.items():
        out.add_term(exps, num.substitute(**vals))
    return out


def verify_q1_reduction(s: int, t: int) -> bool:
    """At q = 1 the correction sum vanishes and the decomposition collapses
    to the two binomial sums over the kernel x + y; checked exactly."""
    _check_st(s, t)
    reduced = _substitute_fs(_rhs_fraction_sum(s, t), (X, Y, X + Y), q=1)
    clear = (s, t, s + t)
    target = _cleared(_q1_target_fraction_sum(s, t), clear)
    lhs = FractionSum((X, Y, X + Y))
    lhs.add_term((s, t, 0), ONE_POLY)
    lhs_poly = _cleared(lhs, clear)
    return _cleared(reduced, clear) == target == lhs_poly


def _parfrac_rhs_fraction_sum(s: int, t: int) -> FractionSum:
    """Partial-fraction RHS over bases (x, c-x, c), with y standing for c."""
    c_minus_x = Y - X
    fs = FractionSum((X, c_minus_x, Y))
    for a in range(s):
        fs.add_term((s - a, 0, t + a), math.comb(a + t - 1, t - 1))
    for a in range(t):
        fs.add_term((0, t - a, s + a), math.comb(a + s - 1, s - 1))
    return fs


def verify_parfrac(s: int, t: int) -> bool:
    """1/(x^s (c-x)^t) = sum_a C(a+t-1,t-1)/(x^(s-a) c^(t+a))
                       + sum_a C(a+s-1,s-1)/(c^(s+a) (c-x)^(t-a)),
    checked directly in the variables (x, c) with y standing for c."""
    _check_st(s, t)
    lhs = FractionSum((X, Y - X, Y))
    lhs.add_term((s, t, 0), ONE_POLY)
    clear = (s, t, s + t)
    return _cleared(lhs, clear) == _cleared(_parfrac_rhs_fraction_sum(s, t), clear)


def verify_parfrac_substitution(s: int, t: int) -> bool:
    """Independent route: substitute y := c - x into the q = 1 reduction.

    Under that substitution the kernel x + y becomes c, so the reduced
    decomposition must transform exactly into the partial-fraction RHS.
    """
    _check_st(s, t)
    reduced = _substitute_fs(_rhs_fraction_sum(s, t), (X, Y - X, Y), q=1, y=Y - X)
    clear = (s, t, s + t)
    return _cleared(reduced, clear) == _cleared(_parfrac_rhs_fraction_sum(s, t), clear)


# --------------------------------------------------------------------------
# Text emission


def render_lemma(s: int, t: int) -> str:
    r"""The verified decomposition as one line of LaTeX-like linear text.

    Grammar (all ASCII, fully parenthesized powers):

        identity := lhs " = " term (" + " term | " - " term)*
        lhs      := "1/(x^S y^T)"
        term     := [coeff "*"] factor ("*" factor)*
        factor   := atom | atom "^" int
        atom     := "x" | "y" | "D" | "(1-q)" | "(1+(q-1)x)" | "(1+(q-1)y)"

    D abbreviates the kernel x+y+(q-1)xy; a trailing legend line records
    that.  Factors with exponent 0 are dropped, exponent 1 is unwritten.
    Terms appear in enumeration order (first triangle, second triangle,
    correction sum).
    """

    def pow_str(atom: str, e: int) -> str:
        if e == 0:
            return ""
        return atom if e == 1 else f"{atom}^{e}"

    pieces = []
    for term in lemma_terms(s, t):
        if term.coeff == 0:
            continue
        numerator = [
            pow_str("(1-q)", term.eps_pow),
            pow_str("(1+(q-1)y)", term.uy_pow),
            pow_str("(1+(q-1)x)", term.ux_pow),
        ]
        denominator = [
            pow_str("x", term.x_pow),
            pow_str("y", term.y_pow),
            pow_str("D", term.d_pow),
        ]
        num_txt = "*".join(p for p in numerator if p)
        den_txt = "*".join(p for p in denominator if p)
        mag = abs(term.coeff)
        bits = [str(mag)] if (mag != 1 or not num_txt) else []
        if num_txt:
            bits.append(num_txt)
        body = "*".join(bits)
        if den_txt:
            body = f"{body}/({den_txt})"
        pieces.append(("- " if term.coeff < 0 else "+ ") + body)
    rhs = " ".join(pieces)
    if rhs.startswith("+ "):
        rhs = rhs[2:]
    return (
        f"1/(x^{s} y^{t}) = {rhs}\n"
        "  where D = x+y+(q-1)xy\n"
    )
