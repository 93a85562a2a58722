from fractions import Fraction

import pytest

from torsionres.scalars import EXACT, FLOAT, GaussianRational, field_for_mode


def test_basic_arithmetic():
    a = GaussianRational(Fraction(1, 2), Fraction(1, 3))
    b = GaussianRational(Fraction(-1, 4), 2)
    assert a + b == GaussianRational(Fraction(1, 4), Fraction(7, 3))
    assert a - b == GaussianRational(Fraction(3, 4), Fraction(-5, 3))
    # (1/2 + i/3)(-1/4 + 2i) = -1/8 - 2/3 + i(1 - 1/12)
    assert a * b == GaussianRational(Fraction(-19, 24), Fraction(11, 12))
    assert (a * b) / b == a
    assert -a == GaussianRational(Fraction(-1, 2), Fraction(-1, 3))


def test_int_and_fraction_interop():
    a = GaussianRational(2, -1)
    assert a * 3 == GaussianRational(6, -3)
    assert 3 * a == GaussianRational(6, -3)
    assert a + Fraction(1, 2) == GaussianRational(Fraction(5, 2), -1)
    assert a == GaussianRational(2, -1)
    assert GaussianRational(5) == 5


def test_mode_mixing_is_an_error():
    a = GaussianRational(1, 1)
    with pytest.raises(TypeError):
        a + 0.5
    with pytest.raises(TypeError):
        a * complex(1, 0)
    with pytest.raises(TypeError):
        0.5 * a


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        GaussianRational(1) / GaussianRational(0)


def test_str_parse_round_trip():
    values = [
        GaussianRational(Fraction(3, 4)),
        GaussianRational(0, Fraction(-1, 2)),
        GaussianRational(Fraction(-2, 7), Fraction(5, 3)),
        GaussianRational(1, -1),
        GaussianRational(0, 0),
    ]
    for v in values:
        assert GaussianRational.parse(str(v)) == v


def test_fields():
    assert field_for_mode("exact") is EXACT
    assert field_for_mode("float") is FLOAT
    with pytest.raises(ValueError):
        field_for_mode("sym")
    assert EXACT.i * EXACT.i == EXACT.of(-1)
    assert FLOAT.i * FLOAT.i == complex(-1)
    assert EXACT.of("2/3") == GaussianRational(Fraction(2, 3))
    assert FLOAT.of(Fraction(1, 4)) == 0.25


def test_conjugate_and_complex():
    a = GaussianRational(Fraction(1, 2), Fraction(-3, 4))
    assert a.conjugate() == GaussianRational(Fraction(1, 2), Fraction(3, 4))
    assert complex(a) == complex(0.5, -0.75)
