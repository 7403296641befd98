from pytest import raises

from qzeta.poly import (
    ONE_POLY,
    Q,
    X,
    Y,
    FractionSum,
    MultiPoly,
    RationalFunction,
    poly_diff,
    rf_equal,
)
from qzeta.scalars import Rational


def test_polynomial_ring_identities():
    assert (X + Y) ** 2 == X**2 + 2 * X * Y + Y**2
    a = X**2 - 3 * Y * Q + MultiPoly.const(Rational(1, 2))
    b = Y - Q**3
    c = X * Y + 1
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    assert a - a == MultiPoly()
    assert (a * b) * c == a * (b * c)


def test_zero_and_constants():
    z = MultiPoly()
    assert z.is_zero()
    assert not z
    assert z + X == X
    assert X * 0 == z
    assert MultiPoly.const(0) == z
    assert MultiPoly.const(Rational(2, 4)) * 2 == ONE_POLY


def test_diff():
    f = X**2 * Y
    assert f.diff("x") == 2 * X * Y
    assert f.diff("y") == X**2
    assert f.diff("q").is_zero()
    g = (X**3 * Y**2 * Q - 5 * X * Q**4) * (Y + Q)
    assert g.diff("x").diff("y") == g.diff("y").diff("x")


def test_degree_substitute_evaluate():
    f = X**3 * Q + Y
    assert f.degree("x") == 3
    assert f.degree("y") == 1
    assert MultiPoly().degree("x") == -1
    assert f.substitute(q=1) == X**3 + Y
    assert f.substitute(x=Y) == Y**3 * Q + Y
    assert f.evaluate(2, 3, Rational(1, 2)) == 7
    # substitution is simultaneous, not sequential
    h = X * Y
    assert h.substitute(x=Y, y=X) == Y * X


def test_power_edge_cases():
    assert X**0 == ONE_POLY
    assert (X + Y) ** 1 == X + Y
    with raises(ValueError):
        X ** (-1)


def test_rational_function_equality():
    one_over_x = RationalFunction(ONE_POLY, X)
    y_over_xy = RationalFunction(Y, X * Y)
    assert rf_equal(one_over_x, y_over_xy)
    assert one_over_x == y_over_xy
    assert not rf_equal(one_over_x, RationalFunction(ONE_POLY, Y))
    with raises(ZeroDivisionError):
        RationalFunction(X, MultiPoly())
    with raises(TypeError):
        hash(one_over_x)


def test_rational_function_arithmetic():
    f = RationalFunction(ONE_POLY, X)
    g = RationalFunction(ONE_POLY, Y)
    assert rf_equal(f + g, RationalFunction(X + Y, X * Y))
    assert rf_equal(f * g, RationalFunction(ONE_POLY, X * Y))
    assert rf_equal(f - f, RationalFunction(MultiPoly(), X))
    assert rf_equal(1 - f, RationalFunction(X - 1, X))


def test_quotient_rule():
    f = RationalFunction(X * Y + 1, X**2)
    # d/dx ((xy+1)/x^2) = (y x^2 - 2x(xy+1)) / x^4 = -(xy+2)/x^3
    expected = RationalFunction(-(X * Y + 2), X**3)
    assert rf_equal(poly_diff(f, "x"), expected)
    with raises(ValueError):
        f.diff("q")


def test_rational_function_evaluate():
    f = RationalFunction(X + Y, X * Y)
    assert f.evaluate(2, 3, Rational(1, 2)) == Rational(5, 6)
    with raises(ZeroDivisionError):
        f.evaluate(0, 3, Rational(1, 2))


def test_fraction_sum_to_rational_function():
    fs = FractionSum((X, Y))
    fs.add_term((1, 0), ONE_POLY)
    fs.add_term((0, 1), ONE_POLY)
    assert rf_equal(fs.to_rational_function(), RationalFunction(X + Y, X * Y))


def test_fraction_sum_add_term_rules():
    fs = FractionSum((X, Y))
    fs.add_term((1, 1), MultiPoly())  # zero numerators are dropped
    assert fs.terms == {}
    fs.add_term((1, 1), ONE_POLY)
    fs.add_term((1, 1), -ONE_POLY)  # cancellation removes the slot
    assert fs.terms == {}
    with raises(ValueError):
        fs.add_term((1,), ONE_POLY)
    with raises(ValueError):
        fs.add_term((1, -1), ONE_POLY)


def test_fraction_sum_diff_matches_quotient_rule():
    d = X + Y + (Q - 1) * X * Y
    fs = FractionSum((X, Y, d))
    fs.add_term((1, 0, 2), X * Q + 3)
    fs.add_term((0, 2, 1), Y - Q)
    direct = fs.to_rational_function()
    for var in ("x", "y"):
        assert rf_equal(fs.diff(var).to_rational_function(), poly_diff(direct, var))


def test_fraction_sum_scaled_and_add():
    fs = FractionSum((X, Y))
    fs.add_term((1, 0), ONE_POLY)
    doubled = fs.scaled(2)
    assert rf_equal(doubled.to_rational_function(), RationalFunction(2 * ONE_POLY, X))
    other = FractionSum((X, Y))
    other.add_term((0, 1), ONE_POLY)
    total = fs + other
    assert rf_equal(total.to_rational_function(), RationalFunction(X + Y, X * Y))
    mismatched = FractionSum((X, Q))
    with raises(ValueError):
        fs + mismatched


def test_empty_fraction_sum():
    fs = FractionSum((X, Y))
    rf = fs.to_rational_function()
    assert rf.num.is_zero()
