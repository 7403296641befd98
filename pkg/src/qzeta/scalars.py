"""Exact rational scalars.

Everything in this package is computed over arbitrary-precision rationals;
floating point never enters any computation path.  The scalar type is
``gmpy2.mpq`` when gmpy2 is importable (GMP-backed, much faster once
numerators grow past a few thousand digits) and ``fractions.Fraction``
otherwise.  Both are kept in canonical form (gcd = 1, positive denominator)
by their constructors.
"""

from __future__ import annotations

import re

try:
    from gmpy2 import mpq as Rational

    BACKEND = "gmpy2"
except ImportError:  # pragma: no cover - exercised only without gmpy2
    from fractions import Fraction as Rational

    BACKEND = "fractions"

ZERO = Rational(0)
ONE = Rational(1)

_INT_RE = re.compile(r"[+-]?\d+")
_FRAC_RE = re.compile(r"([+-]?\d+)/(\d+)")
_DEC_RE = re.compile(r"([+-]?)(\d+)(?:\.(\d*))?(?:[eE]([+-]?\d+))?")


def rat_parse(text):
    """Parse ``p/q``, integer, or terminating-decimal text into a Rational.

    Accepted forms: "3", "-7/3", "0.25", "1e-25", "2.5e3".  The denominator
    of the p/q form must be an unsigned nonzero integer; "7/-3" is malformed.
    Raises ValueError on anything else.
    """
    if not isinstance(text, str):
        raise ValueError(f"rational literal must be a string, got {type(text).__name__}")
    s = text.strip()
    if _INT_RE.fullmatch(s):
        return Rational(int(s))
    m = _FRAC_RE.fullmatch(s)
    if m:
        den = int(m.group(2))
        if den == 0:
            raise ValueError(f"zero denominator in rational literal: {text!r}")
        return Rational(int(m.group(1)), den)
    m = _DEC_RE.fullmatch(s)
    if m:
        sign, intpart, fracpart, exp = m.groups()
        fracpart = fracpart or ""
        value = Rational(int(intpart + fracpart), 10 ** len(fracpart))
        if exp:
            e = int(exp)
            value = value * Rational(10) ** e if e >= 0 else value / Rational(10) ** (-e)
        return -value if sign == "-" else value
    raise ValueError(f"malformed rational literal: {text!r}")


def as_rational(value):
    """Coerce int / string / rational-like into the backend Rational type."""
    if type(value) is Rational:
        # Already canonical and immutable; reconstructing would re-run a gcd,
        # which is what dominates once denominators reach millions of bits.
        return value
    if isinstance(value, str):
        return rat_parse(value)
    if isinstance(value, int):
        return Rational(value)
    # Fraction, mpq, or anything with exact numerator/denominator.
    num = getattr(value, "numerator", None)
    den = getattr(value, "denominator", None)
    if num is None or den is None:
        raise ValueError(f"cannot coerce {value!r} to an exact rational")
    return Rational(num, den)


def rat_str(r) -> str:
    """Canonical "p/q" rendering, denominator always explicit ("3/1")."""
    return f"{r.numerator}/{r.denominator}"


def decimal_str(r, digits: int, mode: str = "nearest") -> str:
    """Decimal rendering with ``digits`` places after the point.

    Display only; the underlying value stays exact.  ``mode`` selects the
    direction: "floor" and "ceil" round toward -/+ infinity (useful for
    printing interval endpoints without losing containment), "nearest" rounds
    half away from zero.
    """
    if digits < 0:
        raise ValueError("digits must be >= 0")
    scale = 10**digits
    num = r.numerator * scale
    den = r.denominator
    if mode == "floor":
        scaled = num // den
    elif mode == "ceil":
        scaled = -((-num) // den)
    elif mode == "nearest":
        q, rem = divmod(abs(num), den)
        if 2 * rem >= den:
            q += 1
        scaled = -q if num < 0 else q
    else:
        raise ValueError(f"unknown rounding mode: {mode!r}")
    scaled = int(scaled)
    sign = "-" if scaled < 0 else ""
    mag = abs(scaled)
    whole, frac = divmod(mag, scale)
    if digits == 0:
        return f"{sign}{whole}"
    return f"{sign}{whole}.{frac:0{digits}d}"


def exact_sum(values):
    """Exact sum of an iterable of Rationals.

    Accumulates raw (numerator, denominator) integer pairs and merges them
    pairwise, deferring the single gcd normalization to the final Rational
    construction.  Sequential ``a + b`` on canonical rationals re-runs a gcd
    per step, which dominates once partial sums carry large denominators.
    """
    pairs = [(v.numerator, v.denominator) for v in values]
    if not pairs:
        return ZERO
    while len(pairs) > 1:
        merged = []
        it = iter(pairs)
        for n1, d1 in it:
            nd2 = next(it, None)
            if nd2 is None:
                merged.append((n1, d1))
            else:
                n2, d2 = nd2
                merged.append((n1 * d2 + n2 * d1, d1 * d2))
        pairs = merged
    n, d = pairs[0]
    return Rational(n, d)


def pow2_floor(r):
    """Largest power of two <= r, as (exponent, Rational); r must be > 0.

    Used to round tolerances down to a dyadic grid so equal-magnitude
    requests share cache entries.
    """
    if r <= 0:
        raise ValueError("pow2_floor needs a positive rational")
    num, den = r.numerator, r.denominator
    # 2^e <= num/den < 2^(e+1)
    e = num.bit_length() - den.bit_length()
    candidate = Rational(2) ** e
    if candidate > r:
        e -= 1
        candidate = Rational(2) ** e
    elif 2 * candidate <= r:
        e += 1
        candidate = 2 * candidate
    return e, candidate
