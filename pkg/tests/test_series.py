"""Truncated series arithmetic, checked against independently computed
Fraction-level oracles (binomial expansion, long division, convolution)."""
import random
from fractions import Fraction

import pytest

from fsmaps.ring import Q3, SQRT3
from fsmaps.series import (
    USeries,
    assert_rational_in_t,
    series_arith,
    series_sqrt,
    t_coeffs,
)


def binomial_half_oracle(scale: int, n_terms: int) -> list[Fraction]:
    """(1 + scale*t)^(1/2) coefficients by the direct binomial product."""
    out = [Fraction(1)]
    c = Fraction(1)
    for k in range(1, n_terms):
        c = c * (Fraction(1, 2) - (k - 1)) / k
        out.append(c * scale ** k)
    return out


ROOT_DISC = [Fraction(x) for x in
             (1, -6, -18, -108, -810, -6804, -61236, -577368, -5629338)]
C_SQUARED = [Fraction(x) for x in (1, 3, 18, 135, 1134, 10206, 96228, 938223)]
C_SERIES = [
    Fraction(1),
    Fraction(3, 2),
    Fraction(63, 8),
    Fraction(891, 16),
    Fraction(57915, 128),
    Fraction(1020357, 256),
]


def t_series(tcoeffs, order):
    return USeries.from_t_coeffs(tcoeffs, order)


def test_binomial_oracle_matches_frozen_row():
    assert binomial_half_oracle(-12, 9) == ROOT_DISC


def test_sqrt_of_one_minus_twelve_t():
    s = series_sqrt(t_series([1, -12], 20))
    assert t_coeffs(s, 8) == ROOT_DISC


def test_c_squared_by_long_division():
    # c^2 = (1 - sqrt(1-12t)) / (6t)
    order = 20
    num = series_arith(t_series([1], order), series_sqrt(t_series([1, -12], order)), "sub")
    den = t_series([0, 6], order)
    c2 = series_arith(num, den, "div")
    got = t_coeffs(c2, 7)
    assert got == C_SQUARED
    # long-division oracle: 6t * c2 must reproduce 1 - sqrt(1-12t)
    for q in range(1, 8):
        assert 6 * got[q - 1] == -ROOT_DISC[q]


def test_c_series_and_square_back():
    order = 14
    num = series_arith(t_series([1], order), series_sqrt(t_series([1, -12], order)), "sub")
    c2 = series_arith(num, t_series([0, 6], order), "div")
    c = series_sqrt(c2)
    assert t_coeffs(c, 5) == C_SERIES
    # independent check: convolve the frozen row with itself in Fractions
    sq = [Fraction(0)] * 6
    for i in range(6):
        for j in range(6 - i):
            sq[i + j] += C_SERIES[i] * C_SERIES[j]
    assert sq == C_SQUARED[:6]


def test_c6t_row():
    order = 12
    num = series_arith(t_series([1], order), series_sqrt(t_series([1, -12], order)), "sub")
    c2 = series_arith(num, t_series([0, 6], order), "div")
    c6t = (c2 ** 3) * USeries.t(order)
    got = t_coeffs(c6t, 4)
    # oracle: cube the frozen c^2 row by plain convolution
    cube = [Fraction(0)] * 4
    for i in range(4):
        for j in range(4 - i):
            for k in range(4 - i - j):
                cube[i + j + k] += C_SQUARED[i] * C_SQUARED[j] * C_SQUARED[k]
    assert got == [Fraction(0)] + cube
    assert got == [Fraction(x) for x in (0, 1, 9, 81, 756)]


def test_valuation_underflow_error():
    order = 10
    one = t_series([1], order)
    t = USeries.t(order)
    with pytest.raises(ValueError, match="underflow"):
        series_arith(one, t, "div")
    with pytest.raises(ZeroDivisionError):
        series_arith(one, USeries.zero(order), "div")


def test_sqrt_odd_valuation_error():
    with pytest.raises(ValueError):
        series_sqrt(USeries.u(8))


def test_laurent_internals_allowed():
    # 1/t has negative valuation internally even though the public op refuses it
    t = USeries.t(10)
    inv = t.inverse()
    assert inv.val == -2
    assert (inv * t).agrees_with(USeries.const(1, 8))


def test_rationality_guard():
    s = USeries.from_t_coeffs([1, 2, 3], 8)
    assert assert_rational_in_t(s)[:3] == [Fraction(1), Fraction(2), Fraction(3)]
    bad = USeries.const(SQRT3, 8)
    with pytest.raises(AssertionError, match="sqrt3"):
        assert_rational_in_t(bad)
    odd = USeries.u(8)
    with pytest.raises(AssertionError, match="odd"):
        assert_rational_in_t(odd)
    with pytest.raises(AssertionError, match="valuation"):
        assert_rational_in_t(USeries.monomial(1, -2, 8))


def test_t_coeffs_order_guard():
    s = USeries.from_t_coeffs([1, 2], 6)
    with pytest.raises(ValueError, match="too small"):
        t_coeffs(s, 3)


def _random_series(rng, order, val=0):
    coeffs = []
    for _ in range(order - val):
        coeffs.append(Q3(Fraction(rng.randint(-9, 9), rng.randint(1, 4)),
                         Fraction(rng.randint(-3, 3), rng.randint(1, 3))))
    if not coeffs[0]:
        coeffs[0] = Q3(1)
    return USeries(val, coeffs, order)


def test_mul_div_round_trip_property():
    rng = random.Random(7)
    for _ in range(20):
        a = _random_series(rng, 12)
        b = _random_series(rng, 12, val=rng.choice((0, 2)))
        prod = series_arith(a, b, "mul")
        back = prod / b
        assert back.agrees_with(a)


def test_sqrt_squares_back_property():
    rng = random.Random(11)
    for _ in range(20):
        a = _random_series(rng, 12)
        lead = a.coeff(0)
        sq = a * a
        r = series_sqrt(sq)
        # principal branch: fix the sign through the leading coefficient
        want = a if (lead.rat > 0 or (lead.rat == 0 and lead.surd > 0)) else -a
        assert r.agrees_with(want)


def test_order_tracking_through_inverse():
    a = USeries(2, [Q3(3), Q3(1), Q3(4)], 8)  # 3u^2 + u^3 + 4u^4 + O(u^8)
    inv = a.inverse()
    assert inv.val == -2
    assert inv.order == 4
    assert (a * inv).agrees_with(USeries.const(1, 6))


def test_shift_and_truncate():
    a = USeries.from_t_coeffs([5, 7], 10)
    assert a.shift(3).val == 3
    assert a.shift(3).order == 13
    assert a.truncate(4).order == 4
    assert a.truncate(4).agrees_with(a)


def test_pow_zero_and_negative():
    a = t_series([1, 1], 10)
    assert (a ** 0).agrees_with(USeries.const(1, 10))
    assert (a ** -2).agrees_with((a * a).inverse())
