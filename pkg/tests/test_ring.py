"""Field arithmetic in Q(sqrt 3)."""
from fractions import Fraction

import pytest

from fsmaps.ring import ONE, SQRT3, ZERO, Q3


def test_basic_arithmetic():
    a = Q3(Fraction(1, 2), Fraction(3, 4))
    b = Q3(2, Fraction(-1, 4))
    assert a + b == Q3(Fraction(5, 2), Fraction(1, 2))
    assert a - b == Q3(Fraction(-3, 2), 1)
    # (1/2 + 3/4 s)(2 - 1/4 s), s^2 = 3: rat 1 - 9/16, surd -1/8 + 3/2
    assert a * b == Q3(Fraction(7, 16), Fraction(11, 8))
    assert -a == Q3(Fraction(-1, 2), Fraction(-3, 4))


def test_sqrt3_squares_to_three():
    assert SQRT3 * SQRT3 == Q3(3)
    assert SQRT3 ** 2 == Q3(3)


def test_inverse_and_division():
    a = Q3(2, 5)  # norm 4 - 75 = -71
    assert a * a.inverse() == ONE
    assert (a / a) == ONE
    b = Q3(Fraction(1, 3))
    assert (a / b) == a * Q3(3)
    with pytest.raises(ZeroDivisionError):
        ZERO.inverse()


def test_rational_fast_path_consistency():
    a = Q3(Fraction(7, 3))
    b = Q3(Fraction(-2, 5), Fraction(1, 5))
    assert a * b == Q3(Fraction(-14, 15), Fraction(7, 15))


def test_pow():
    a = ONE + SQRT3
    assert a ** 0 == ONE
    assert a ** 1 == a
    assert a ** 2 == Q3(4, 2)
    assert a ** 5 == a * a * a * a * a


def test_sqrt_rational_square():
    assert Q3(Fraction(49, 4)).sqrt() == Q3(Fraction(7, 2))
    assert Q3(0).sqrt() == ZERO
    assert Q3(1).sqrt() == ONE


def test_sqrt_three_times_square():
    # 27 = 3 * 9
    assert Q3(27).sqrt() == Q3(0, 3)
    assert Q3(Fraction(3, 4)).sqrt() == Q3(0, Fraction(1, 2))


def test_sqrt_mixed():
    a = Q3(2, 1)
    assert (a * a).sqrt() == a  # sqrt(7 + 4 sqrt3)
    b = Q3(Fraction(1, 2), Fraction(5, 3))
    sq = b * b
    r = sq.sqrt()
    assert r * r == sq


def test_sqrt_no_root():
    with pytest.raises(ValueError):
        Q3(2).sqrt()
    with pytest.raises(ValueError):
        Q3(1, 1).sqrt()  # 1 + sqrt3 is not a square in the field


def test_str_round_trip():
    for a in (Q3(Fraction(3, 7)), Q3(0, Fraction(-2, 5)), Q3(Fraction(1, 2), Fraction(3, 4)), ZERO):
        assert Q3.from_str(a.to_str()) == a


def test_hash_and_bool():
    assert not ZERO
    assert ONE
    assert hash(Q3(2, 0)) == hash(Q3(Fraction(2), Fraction(0)))
    assert Q3(1, 0) == 1
