"""Sparse polynomials in (X, Y, Q) and rational functions built from them.

``MultiPoly`` maps exponent triples (dx, dy, dq) to nonzero rational
coefficients; the zero polynomial is the empty map.  ``RationalFunction`` is
a num/den pair of MultiPolys with equality decided by cross-multiplication
(num1*den2 == num2*den1), never by computing polynomial gcds - identity
verification only ever needs to decide equality, not to produce reduced
forms.

``FractionSum`` represents a sum of simple fractions num / (g1^e1 g2^e2 ...)
over a fixed tuple of base polynomials.  Differentiating such a sum term by
term (product rule per base factor) keeps denominator exponents growing
linearly, where the literal quotient rule on a single num/den pair doubles
denominator degree per derivative.  The identity builders assemble both
sides of every verified identity through this type.
"""

from __future__ import annotations

from .scalars import ONE, Rational, as_rational

_VARS = {"x": 0, "y": 1, "q": 2}
_VAR_NAMES = ("X", "Y", "Q")


def _coerce_coeff(value):
    if isinstance(value, MultiPoly):
        raise TypeError("expected a scalar coefficient, got a polynomial")
    return as_rational(value)


class MultiPoly:
    """Polynomial in X, Y, Q with exact rational coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        cleaned = {}
        if terms:
            for key, coeff in terms.items():
                if coeff:
                    cleaned[key] = coeff
        self.terms = cleaned

    @classmethod
    def const(cls, value):
        value = _coerce_coeff(value)
        return cls({(0, 0, 0): value}) if value else cls()

    @classmethod
    def variable(cls, name: str):
        idx = _VARS[name.lower()]
        key = tuple(1 if i == idx else 0 for i in range(3))
        return cls({key: ONE})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        if not isinstance(other, MultiPoly):
            other = MultiPoly.const(other)
        result = dict(self.terms)
        for key, coeff in other.terms.items():
            new = result.get(key, 0) + coeff
            if new:
                result[key] = new
            else:
                result.pop(key, None)
        out = MultiPoly.__new__(MultiPoly)
        out.terms = result
        return out

    __radd__ = __add__

    def __neg__(self):
        out = MultiPoly.__new__(MultiPoly)
        out.terms = {key: -coeff for key, coeff in self.terms.items()}
        return out

    def __sub__(self, other):
        if not isinstance(other, MultiPoly):
            other = MultiPoly.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            coeff = _coerce_coeff(other)
            if not coeff:
                return MultiPoly()
            out = MultiPoly.__new__(MultiPoly)
            out.terms = {key: c * coeff for key, c in self.terms.items()}
            return out
        result = {}
        for (a1, b1, c1), co1 in self.terms.items():
            for (a2, b2, c2), co2 in other.terms.items():
                key = (a1 + a2, b1 + b2, c1 + c2)
                new = result.get(key, 0) + co1 * co2
                if new:
                    result[key] = new
                else:
                    result.pop(key, None)
        out = MultiPoly.__new__(MultiPoly)
        out.terms = result
        return out

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if exponent < 0:
            raise ValueError("negative polynomial powers are not defined")
        result = MultiPoly.const(1)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def diff(self, var: str) -> "MultiPoly":
        idx = _VARS[var.lower()]
        result = {}
        for key, coeff in self.terms.items():
            e = key[idx]
            if e:
                new_key = tuple(v - 1 if i == idx else v for i, v in enumerate(key))
                result[new_key] = result.get(new_key, 0) + coeff * e
        return MultiPoly(result)

    def degree(self, var: str) -> int:
        """Largest exponent of ``var``; -1 for the zero polynomial."""
        idx = _VARS[var.lower()]
        if not self.terms:
            return -1
        return max(key[idx] for key in self.terms)

    def substitute(self, x=None, y=None, q=None) -> "MultiPoly":
        """Substitute polynomials or rationals for variables (None = keep)."""
        reps = []
        for name, value in (("x", x), ("y", y), ("q", q)):
            if value is None:
                reps.append(MultiPoly.variable(name))
            elif isinstance(value, MultiPoly):
                reps.append(value)
            else:
                reps.append(MultiPoly.const(value))
        caches = [{0: MultiPoly.const(1)} for _ in range(3)]

        def power(i, e):
            cache = caches[i]
            if e not in cache:
                cache[e] = power(i, e - 1) * reps[i]
            return cache[e]

        total = MultiPoly()
        for key, coeff in self.terms.items():
            term = MultiPoly.const(coeff)
            for i, e in enumerate(key):
                if e:
                    term = term * power(i, e)
            total = total + term
        return total

    def evaluate(self, x, y, q):
        """Value at an exact rational point."""
        point = (as_rational(x), as_rational(y), as_rational(q))
        caches = [{0: ONE} for _ in range(3)]

        def power(i, e):
            cache = caches[i]
            if e not in cache:
                cache[e] = power(i, e - 1) * point[i]
            return cache[e]

        total = Rational(0)
        for key, coeff in self.terms.items():
            value = coeff
            for i, e in enumerate(key):
                if e:
                    value = value * power(i, e)
            total += value
        return total

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for key in sorted(self.terms, reverse=True):
            coeff = self.terms[key]
            factors = []
            for name, e in zip(_VAR_NAMES, key):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            body = "*".join(factors)
            if not body:
                parts.append(str(coeff))
            elif coeff == 1:
                parts.append(body)
            elif coeff == -1:
                parts.append(f"-{body}")
            else:
                parts.append(f"{coeff}*{body}")
        rendered = " + ".join(parts)
        return rendered.replace("+ -", "- ")

    def __repr__(self):
        return f"MultiPoly({self})"


X = MultiPoly.variable("x")
Y = MultiPoly.variable("y")
Q = MultiPoly.variable("q")
ONE_POLY = MultiPoly.const(1)


class RationalFunction:
    """Quotient num/den of MultiPolys, den != 0; no implicit reduction."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if not isinstance(num, MultiPoly):
            num = MultiPoly.const(num)
        if den is None:
            den = ONE_POLY
        elif not isinstance(den, MultiPoly):
            den = MultiPoly.const(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        self.num = num
        self.den = den

    def __add__(self, other):
        other = _as_rf(other)
        return RationalFunction(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        return self + (-_as_rf(other))

    def __rsub__(self, other):
        return (-self) + _as_rf(other)

    def __mul__(self, other):
        other = _as_rf(other)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def diff(self, var: str) -> "RationalFunction":
        """Quotient-rule derivative (num' den - num den') / den^2."""
        if var.lower() not in ("x", "y"):
            raise ValueError("differentiation variable must be X or Y")
        n, d = self.num, self.den
        return RationalFunction(n.diff(var) * d - n * d.diff(var), d * d)

    def substitute(self, x=None, y=None, q=None) -> "RationalFunction":
        num = self.num.substitute(x=x, y=y, q=q)
        den = self.den.substitute(x=x, y=y, q=q)
        return RationalFunction(num, den)

    def evaluate(self, x, y, q):
        den = self.den.evaluate(x, y, q)
        if den == 0:
            raise ZeroDivisionError("denominator vanishes at evaluation point")
        return self.num.evaluate(x, y, q) / den

    def equal(self, other) -> bool:
        other = _as_rf(other)
        return self.num * other.den == other.num * self.den

    def __eq__(self, other):
        if isinstance(other, (RationalFunction, MultiPoly)) or hasattr(other, "numerator"):
            return self.equal(other)
        return NotImplemented

    def __hash__(self):
        raise TypeError("RationalFunction is unhashable (equality is semantic)")

    def __str__(self):
        if self.den == ONE_POLY:
            return str(self.num)
        return f"({self.num}) / ({self.den})"

    def __repr__(self):
        return f"RationalFunction({self})"


def _as_rf(value):
    if isinstance(value, RationalFunction):
        return value
    if isinstance(value, MultiPoly):
        return RationalFunction(value)
    return RationalFunction(MultiPoly.const(value))


def poly_diff(f: RationalFunction, var: str) -> RationalFunction:
    """Partial derivative of a rational function by the quotient rule."""
    return f.diff(var)


def rf_equal(f, g) -> bool:
    """Mathematical equality of rational functions via cross-multiplication."""
    return _as_rf(f).equal(g)


class FractionSum:
    """Sum of simple fractions num / prod(bases[i]^e[i]) over fixed bases.

    terms maps exponent tuples to numerator polynomials.  The representation
    is closed under term-by-term differentiation: each derivative of
    P/prod g_i^e_i contributes P' at the same exponents plus, for every base
    with e_i > 0, the term -e_i * g_i' * P at exponents e + unit_i.
    """

    __slots__ = ("bases", "terms")

    def __init__(self, bases):
        self.bases = tuple(bases)
        self.terms = {}

    def copy(self) -> "FractionSum":
        out = FractionSum(self.bases)
        out.terms = dict(self.terms)
        return out

    def add_term(self, exponents, num) -> None:
        exponents = tuple(exponents)
        if len(exponents) != len(self.bases) or any(e < 0 for e in exponents):
            raise ValueError("bad exponent tuple for this FractionSum")
        if not isinstance(num, MultiPoly):
            num = MultiPoly.const(num)
        if num.is_zero():
            return
        current = self.terms.get(exponents)
        total = num if current is None else current + num
        if total.is_zero():
            self.terms.pop(exponents, None)
        else:
            self.terms[exponents] = total

    def __add__(self, other: "FractionSum") -> "FractionSum":
        if self.bases != other.bases:
            raise ValueError("FractionSums over different bases")
        out = self.copy()
        for exps, num in other.terms.items():
            out.add_term(exps, num)
        return out

    def scaled(self, factor) -> "FractionSum":
        out = FractionSum(self.bases)
        for exps, num in self.terms.items():
            out.add_term(exps, num * factor)
        return out

    def diff(self, var: str) -> "FractionSum":
        out = FractionSum(self.bases)
        base_derivs = [g.diff(var) for g in self.bases]
        for exps, num in self.terms.items():
            out.add_term(exps, num.diff(var))
            for i, e in enumerate(exps):
                if e and not base_derivs[i].is_zero():
                    bumped = tuple(v + 1 if j == i else v for j, v in enumerate(exps))
                    out.add_term(bumped, base_derivs[i] * num * (-e))
        return out

    def to_rational_function(self) -> RationalFunction:
        if not self.terms:
            return RationalFunction(MultiPoly())
        maxes = [max(exps[i] for exps in self.terms) for i in range(len(self.bases))]
        powers = []
        for g, top in zip(self.bases, maxes):
            row = [ONE_POLY]
            for _ in range(top):
                row.append(row[-1] * g)
            powers.append(row)
        total = MultiPoly()
        for exps, num in self.terms.items():
            cofactor = num
            for i, e in enumerate(exps):
                cofactor = cofactor * powers[i][maxes[i] - e]
            total = total + cofactor
        den = ONE_POLY
        for i, top in enumerate(maxes):
            den = den * powers[i][top]
        return RationalFunction(total, den)
