from fractions import Fraction

from pytest import raises

from qzeta.scalars import (
    BACKEND,
    Rational,
    as_rational,
    decimal_str,
    exact_sum,
    pow2_floor,
    rat_parse,
    rat_str,
)


def test_backend_is_exact():
    assert BACKEND in ("gmpy2", "fractions")
    third = Rational(1, 3)
    assert third * 3 == 1


def test_rat_parse_integers_and_fractions():
    assert rat_parse("3") == 3
    assert rat_parse("-7/3") == Rational(-7, 3)
    assert rat_parse("+4/6") == Rational(2, 3)
    assert rat_parse(" 1/2 ") == Rational(1, 2)


def test_rat_parse_decimals():
    assert rat_parse("0.25") == Rational(1, 4)
    assert rat_parse("1e-25") == Rational(1, 10**25)
    assert rat_parse("2.5e3") == 2500
    assert rat_parse("-0.5") == Rational(-1, 2)
    assert rat_parse("1E2") == 100


def test_rat_parse_rejects_malformed():
    for bad in ("", "abc", "1/0", "7/-3", "1.2.3", "1/2/3", "0x10", "nan"):
        with raises(ValueError):
            rat_parse(bad)
    with raises(ValueError):
        rat_parse(0.5)  # not a string


def test_as_rational():
    assert as_rational(7) == 7
    assert as_rational("3/4") == Rational(3, 4)
    assert as_rational(Fraction(3, 7)) == Rational(3, 7)
    assert as_rational(Rational(5, 9)) == Rational(5, 9)
    with raises(ValueError):
        as_rational(0.5)


def test_rat_str_always_explicit():
    assert rat_str(Rational(3)) == "3/1"
    assert rat_str(Rational(-2, 4)) == "-1/2"
    assert rat_parse(rat_str(Rational(22, 7))) == Rational(22, 7)


def test_decimal_str_modes():
    third = Rational(1, 3)
    assert decimal_str(third, 6) == "0.333333"
    assert decimal_str(third, 6, "ceil") == "0.333334"
    assert decimal_str(third, 6, "floor") == "0.333333"
    assert decimal_str(-third, 6, "floor") == "-0.333334"
    assert decimal_str(-third, 6, "ceil") == "-0.333333"
    # half rounds away from zero
    assert decimal_str(Rational(1, 2), 0) == "1"
    assert decimal_str(Rational(-1, 2), 0) == "-1"
    assert decimal_str(Rational(25, 1000), 2) == "0.03"
    assert decimal_str(Rational(3), 2) == "3.00"


def test_decimal_str_rejects_bad_args():
    with raises(ValueError):
        decimal_str(Rational(1, 3), -1)
    with raises(ValueError):
        decimal_str(Rational(1, 3), 3, "sideways")


def test_exact_sum_matches_sequential():
    vals = [Rational(1, n) for n in range(1, 60)]
    total = Rational(0)
    for v in vals:
        total += v
    assert exact_sum(vals) == total
    assert exact_sum([]) == 0
    assert exact_sum([Rational(1, 3)] * 3) == 1


def test_pow2_floor():
    assert pow2_floor(Rational(1)) == (0, 1)
    assert pow2_floor(Rational(5, 8)) == (-1, Rational(1, 2))
    assert pow2_floor(Rational(3)) == (1, 2)
    e, v = pow2_floor(Rational(1, 10**25))
    assert v <= Rational(1, 10**25) < 2 * v
    assert v == Rational(2) ** e
    with raises(ValueError):
        pow2_floor(Rational(0))
