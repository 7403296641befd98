"""Interval arithmetic over exact rationals.

``Enclosure`` is the result type for every series evaluation: a closed
interval [lo, hi] with exact rational endpoints that provably contains the
mathematical value.  Supported operations are addition, subtraction,
negation, and multiplication (by enclosures or exact scalars); each returns
an enclosure containing every pointwise result of the operands.  Division is
deliberately not provided - no verification path needs it, and excluding it
keeps the soundness argument one-sided.

``DyadicContext`` is a second, fixed-precision interval engine: endpoints are
kept on a 2^-prec grid and every operation rounds outward.  It trades width
for speed and is used where fully exact accumulation is hopeless (geometric
ratios within 2^-10 of 1, where exact partial sums would carry ~1e8-digit
denominators).  Soundness is unconditional; only the width depends on prec.
"""

from __future__ import annotations

from .scalars import Rational, as_rational


class Enclosure:
    """Closed interval [lo, hi], lo <= hi, exact rational endpoints."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo, hi):
        lo = as_rational(lo)
        hi = as_rational(hi)
        if lo > hi:
            raise ValueError(f"inverted enclosure: lo={lo} > hi={hi}")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    def __setattr__(self, name, value):
        raise AttributeError("Enclosure is immutable")

    @classmethod
    def point(cls, value):
        value = as_rational(value)
        return cls(value, value)

    @property
    def width(self):
        return self.hi - self.lo

    @property
    def midpoint(self):
        return (self.lo + self.hi) / 2

    def contains(self, value) -> bool:
        value = as_rational(value)
        return self.lo <= value <= self.hi

    def outward(self, prec: int) -> "Enclosure":
        """Round endpoints outward onto the 2^-prec dyadic grid.

        Containment is preserved and the width grows by at most 2^(1-prec).
        Exact partial sums leave endpoints with denominators of millions of
        bits; compressing them once here keeps every later interval
        operation cheap.
        """
        if prec < 4:
            raise ValueError("prec must be at least 4 bits")
        return Enclosure(_round_down(self.lo, prec), _round_up(self.hi, prec))

    def contains_interval(self, other: "Enclosure") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def intersects(self, other: "Enclosure") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def __add__(self, other):
        if isinstance(other, Enclosure):
            return Enclosure(self.lo + other.lo, self.hi + other.hi)
        other = as_rational(other)
        return Enclosure(self.lo + other, self.hi + other)

    __radd__ = __add__

    def __neg__(self):
        return Enclosure(-self.hi, -self.lo)

    def __sub__(self, other):
        if isinstance(other, Enclosure):
            return Enclosure(self.lo - other.hi, self.hi - other.lo)
        other = as_rational(other)
        return Enclosure(self.lo - other, self.hi - other)

    def __rsub__(self, other):
        return (-self) + as_rational(other)

    def __mul__(self, other):
        if isinstance(other, Enclosure):
            products = (
                self.lo * other.lo,
                self.lo * other.hi,
                self.hi * other.lo,
                self.hi * other.hi,
            )
            return Enclosure(min(products), max(products))
        other = as_rational(other)
        if other >= 0:
            return Enclosure(self.lo * other, self.hi * other)
        return Enclosure(self.hi * other, self.lo * other)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, Enclosure):
            return NotImplemented
        return self.lo == other.lo and self.hi == other.hi

    def __hash__(self):
        return hash((self.lo, self.hi))

    def __repr__(self):
        return f"Enclosure({self.lo!s}, {self.hi!s})"


def _round_down(value, prec: int):
    return Rational((value.numerator << prec) // value.denominator, 1 << prec)


def _round_up(value, prec: int):
    return Rational(-((-value.numerator << prec) // value.denominator), 1 << prec)


class DyadicContext:
    """Outward-rounding interval arithmetic on a 2^-prec endpoint grid.

    Intervals are plain (lo, hi) Rational tuples whose denominators divide
    2^prec.  Every operation first computes the exact interval result, then
    widens each endpoint outward to the grid, so containment of the true
    value is preserved unconditionally.
    """

    def __init__(self, prec: int):
        if prec < 4:
            raise ValueError("prec must be at least 4 bits")
        self.prec = prec

    def interval(self, lo, hi=None):
        lo = as_rational(lo)
        hi = lo if hi is None else as_rational(hi)
        if lo > hi:
            raise ValueError("inverted interval")
        return (_round_down(lo, self.prec), _round_up(hi, self.prec))

    def add(self, a, b):
        return (_round_down(a[0] + b[0], self.prec), _round_up(a[1] + b[1], self.prec))

    def sub(self, a, b):
        return (_round_down(a[0] - b[1], self.prec), _round_up(a[1] - b[0], self.prec))

    def mul(self, a, b):
        products = (a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1])
        return (_round_down(min(products), self.prec), _round_up(max(products), self.prec))

    def scale(self, a, c):
        c = as_rational(c)
        if c >= 0:
            return (_round_down(a[0] * c, self.prec), _round_up(a[1] * c, self.prec))
        return (_round_down(a[1] * c, self.prec), _round_up(a[0] * c, self.prec))

    def recip(self, a):
        if a[0] <= 0:
            raise ValueError("recip requires a strictly positive interval")
        return (_round_down(1 / a[1], self.prec), _round_up(1 / a[0], self.prec))

    def pow(self, a, e: int):
        if e < 0:
            raise ValueError("negative exponents not supported; use recip")
        if a[0] < 0:
            raise ValueError("pow requires a nonnegative interval")
        result = self.interval(1)
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def to_enclosure(self, a) -> Enclosure:
        return Enclosure(a[0], a[1])
