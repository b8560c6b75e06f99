import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from oreext.coeff import I, ONE, ZERO, GaussianRational, abs_approx, abs_sq, as_scalar

fractions = st.fractions(max_denominator=50).filter(lambda f: abs(f) < 100)
gaussians = st.builds(GaussianRational, fractions, fractions)


def G(text):
    return GaussianRational.parse(text)


def test_unit_times_conjugate():
    assert G("3/5+4/5i") * G("3/5-4/5i") == 1


def test_sum_of_conjugates():
    assert G("1+i") + G("1-i") == 2


def test_inverse_of_q():
    q = G("3/5+4/5i")
    assert q * q.inverse() == ONE
    assert q.inverse() == q.conjugate()


@pytest.mark.parametrize(
    "text, expected",
    [("3/5+4/5i", Fraction(1)), ("0", Fraction(0)), ("1+2i", Fraction(5)), ("-7", Fraction(49))],
)
def test_abs_sq(text, expected):
    assert abs_sq(G(text)) == expected


def test_abs_approx():
    assert abs_approx(G("1+i")) == pytest.approx(math.sqrt(2))
    assert abs_approx(-7) == 7.0
    assert abs_approx(G("3/5+4/5i")) == 1.0
    assert abs_approx(G("3/5")) == 0.6


@pytest.mark.parametrize("text", ["3/5+4/5i", "-2i", "i", "-i", "7", "-1/3", "1-i", "0", "5/2+1/7i"])
def test_literal_round_trip(text):
    assert str(G(text)) == text


@pytest.mark.parametrize("text", ["", "3//5", "i2", "1+", "abc", "1.5"])
def test_bad_literals(text):
    with pytest.raises(ValueError):
        G(text)


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        ZERO.inverse()
    with pytest.raises(ZeroDivisionError):
        ONE / 0


def test_floats_rejected():
    with pytest.raises(TypeError):
        as_scalar(0.5)


def test_interop_with_builtin_rationals():
    assert GaussianRational(3) == 3
    assert GaussianRational(Fraction(1, 2)) == Fraction(1, 2)
    assert hash(GaussianRational(Fraction(1, 2))) == hash(Fraction(1, 2))
    assert {GaussianRational(2): "x"}[2] == "x"
    assert 1 - I == GaussianRational(1, -1)
    assert 2 / GaussianRational(0, 2) == -I


def test_powers():
    q = G("3/5+4/5i")
    assert q**0 == 1
    assert q**2 == G("-7/25+24/25i")
    assert q**-3 * q**3 == 1
    assert I**4 == 1


def test_immutable():
    with pytest.raises(AttributeError):
        ONE.re = 2


def test_normalised_storage():
    assert G("2/4+2/4i") == G("1/2+1/2i")
    assert G("6/4") == Fraction(3, 2)
    assert G("1/2+1/3i").re == Fraction(1, 2)
    assert G("1/2+1/3i").im == Fraction(1, 3)


@given(gaussians, gaussians, gaussians)
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a - a == ZERO
    if b:
        assert (a / b) * b == a


@given(gaussians)
def test_modulus_is_multiplicative(a):
    assert (a * a.conjugate()).re == a.abs_sq()
    assert (a * a).abs_sq() == a.abs_sq() ** 2


@given(gaussians)
def test_str_parse_round_trip(a):
    assert G(str(a)) == a
