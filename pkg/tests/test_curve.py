"""Disk curve solve, branch points, deck transformations."""
from fractions import Fraction

import pytest

from fsmaps.curve import local_deck, solve_disk_curve, w_branch_points, x_local_deck
from fsmaps.ring import Q3, SQRT3
from fsmaps.series import USeries, t_coeffs
from fsmaps.zpoly import EXACT, LocalSeries


C_SERIES = [
    Fraction(1),
    Fraction(3, 2),
    Fraction(63, 8),
    Fraction(891, 16),
    Fraction(57915, 128),
]


def quad_curve(order=14):
    return solve_disk_curve({4: USeries.t(order)}, order)


def test_gaussian_curve():
    cv = solve_disk_curve({}, 10)
    assert cv.alpha.is_zero()
    assert cv.gamma.agrees_with(USeries.const(1, 10))
    assert cv.w_zpoly.coeff(-1).agrees_with(USeries.const(1, 10))
    assert cv.w_zpoly.lo == -1 and cv.w_zpoly.hi == -1
    assert w_branch_points(cv) == []


def test_quadrangulation_gamma_is_c():
    cv = quad_curve()
    assert cv.alpha.is_zero()
    assert t_coeffs(cv.gamma, 4) == C_SERIES


def test_quadrangulation_w_closed_form():
    # w(z) = 1/(c z) - t c^3 / z^3
    cv = quad_curve()
    c = cv.gamma
    t = USeries.t(cv.order)
    assert cv.w_zpoly.lo == -3 and cv.w_zpoly.hi == -1
    assert cv.w_zpoly.coeff(-1).agrees_with(c.inverse())
    assert cv.w_zpoly.coeff(-3).agrees_with(-(t * c * c * c))
    assert cv.w_zpoly.coeff(-2).is_zero()


def test_x_symmetric_under_recip():
    cv = quad_curve(8)
    assert cv.x_zpoly.agrees_with(cv.x_zpoly.subs_recip())
    cv2 = solve_disk_curve({3: USeries.t(8).scale(Fraction(1, 2))}, 8)
    assert cv2.x_zpoly.agrees_with(cv2.x_zpoly.subs_recip())


def test_odd_potential_solves():
    # t_3 turns on a nonzero alpha
    cv = solve_disk_curve({3: USeries.t(10)}, 10)
    assert not cv.alpha.is_zero()
    assert cv.w_zpoly.coeff(-1).agrees_with(cv.gamma.inverse())


def test_nonformal_weight_rejected():
    with pytest.raises(ValueError, match="formal"):
        solve_disk_curve({4: Fraction(1, 3)}, 8)
    with pytest.raises(ValueError, match="degree"):
        solve_disk_curve({0: USeries.t(8)}, 8)


def test_w_branch_points_quadrangulation():
    cv = quad_curve()
    bs = w_branch_points(cv)
    assert len(bs) == 2
    c2 = cv.gamma * cv.gamma
    want = c2.shift(1).scale(SQRT3)  # sqrt3 * c^2 * u
    assert bs[0].agrees_with(want)
    assert bs[1].agrees_with(-want)
    # closed under z -> -z
    assert bs[1].agrees_with(-bs[0])


def test_w_odd_at_branch_points():
    cv = quad_curve()
    bs = cv.w_branch
    w_plus = cv.w_zpoly.eval_at(bs[0])
    w_minus = cv.w_zpoly.eval_at(bs[1])
    assert (w_plus + w_minus).is_zero()
    # the values themselves carry a surd part
    lead = w_plus.coeff(w_plus.val)
    assert not lead.is_rational


def test_local_deck_leading_coefficient():
    cv = quad_curve()
    b = cv.w_branch[0]
    deck = local_deck(cv, b, 6)
    assert deck.coeff(1).agrees_with(USeries.const(-1, 4))


def test_local_deck_d2_formula():
    # d_2 = -w'''(b) / (3 w''(b))
    cv = quad_curve()
    b = cv.w_branch[0]
    deck = local_deck(cv, b, 5)
    loc = cv.w_zpoly.taylor_at(b, 6)
    w2 = loc.coeff(2).scale(2)
    w3 = loc.coeff(3).scale(6)
    want = -(w3 / (w2.scale(3)))
    assert deck.coeff(2).agrees_with(want)


def test_local_deck_involutive():
    cv = quad_curve()
    for b in cv.w_branch:
        deck = local_deck(cv, b, 6)
        comp = deck.iota.compose(deck.iota)
        assert comp.coeff(1).agrees_with(USeries.const(1, 6))
        for k in range(2, comp.horizon):
            assert comp.coeff(k).is_zero()


def test_local_deck_preserves_w():
    cv = quad_curve()
    b = cv.w_branch[0]
    deck = local_deck(cv, b, 6)
    w_loc = cv.w_zpoly.taylor_at(b, 7)
    diff = w_loc.compose(deck.iota) - w_loc
    for k in range(diff.offset, diff.horizon):
        assert diff.coeff(k).is_zero()


def test_x_local_deck_exact():
    for a in (1, -1):
        deck = x_local_deck(a, 8)
        # iota = -zeta/(1 + a zeta): check (1 + a*iota) * iota == -zeta... i.e.
        # involutivity and the x-preservation property
        comp = deck.iota.compose(deck.iota)
        assert comp.coeff(1) == USeries.const(1, EXACT)
        for k in range(2, comp.horizon):
            assert comp.coeff(k).is_zero()


def test_x_local_deck_preserves_x():
    cv = quad_curve(10)
    for a in (1, -1):
        deck = x_local_deck(a, 8)
        x_loc = cv.x_zpoly.taylor_at(USeries.const(a, EXACT), 9)
        diff = x_loc.compose(deck.iota) - x_loc
        for k in range(diff.offset, diff.horizon):
            assert diff.coeff(k).is_zero()


def test_deck_zeta_order_guard():
    cv = quad_curve(8)
    with pytest.raises(ValueError):
        local_deck(cv, cv.w_branch[0], 1)


def test_random_sparse_potentials_solve():
    import random
    rng = random.Random(2)
    for _ in range(6):
        pot = {}
        for d in (3, 4, 5):
            if rng.random() < 0.7:
                pot[d] = USeries.t(12).scale(Fraction(rng.randint(1, 5), rng.randint(1, 4)))
        cv = solve_disk_curve(pot, 12)
        # the two moment constraints are asserted inside; spot-check the
        # resolvent normalization w ~ 1/(gamma z)
        assert cv.w_zpoly.coeff(-1).agrees_with(cv.gamma.inverse())
