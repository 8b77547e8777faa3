"""Residue recursion against frozen tables, closed forms, and the enumerator."""
import warnings
from fractions import Fraction

import pytest

from fsmaps import reference_tables as rt
from fsmaps.closed import (
    cylinder_11_series,
    fully_simple_torus_form,
    ordinary_torus_form,
)
from fsmaps.curve import solve_disk_curve
from fsmaps.oracle import CONNECTED, FULLY_SIMPLE, ORDINARY as ORD_CLASS, enumerate_maps
from fsmaps.recursion import (
    EXCHANGED,
    ORDINARY,
    AmplitudeCache,
    IntegralityWarning,
    eo_amplitude,
    extract_fullysimple,
    extract_ordinary,
    fullysimple_anomalies,
    pants_amplitude,
    pole_cap,
)
from fsmaps.series import USeries, t_coeffs
from fsmaps.transforms import (
    fully_simple_cylinders,
    fully_simple_disks,
    ordinary_cylinders,
    ordinary_disks,
    simple_cylinders,
)

ORDER = 18


@pytest.fixture(scope="module")
def quad():
    return solve_disk_curve({4: USeries.t(ORDER)}, ORDER)


@pytest.fixture(scope="module")
def cache(quad):
    return AmplitudeCache(quad)


@pytest.fixture(scope="module")
def gauss():
    return solve_disk_curve({}, 6)


def _const(c, q):
    return c.agrees_with(USeries.const(Fraction(q), 4))


def test_gaussian_torus_anchor(gauss):
    # partial fractions of z^3 dz/(z^2-1)^4, the one closed form small
    # enough to check by hand
    amp = eo_amplitude(gauss, ORDINARY, 1, 1)
    assert _const(amp.centers[0], 1) and _const(amp.centers[1], -1)
    expected = {
        ((0, 2),): Fraction(-1, 32),
        ((0, 3),): Fraction(1, 16),
        ((0, 4),): Fraction(1, 16),
        ((1, 2),): Fraction(1, 32),
        ((1, 3),): Fraction(1, 16),
        ((1, 4),): Fraction(-1, 16),
    }
    assert set(amp.terms) == set(expected)
    for key, val in expected.items():
        assert _const(amp.coeff(key), val)


def test_gaussian_has_no_exchanged_amplitudes(gauss):
    # w = 1/z never branches, so every exchanged amplitude vanishes
    for (g, n) in ((1, 1), (0, 3)):
        assert eo_amplitude(gauss, EXCHANGED, g, n).terms == {}
    assert extract_fullysimple(gauss, 1, (2,), 3) == [0] * 4


def test_ordinary_torus_rows(quad, cache):
    for l, row in rt.ORDINARY_TORI.items():
        assert extract_ordinary(quad, 1, (l,), rt.Q_MAX, cache) == list(row)
    assert extract_ordinary(quad, 1, (3,), 4, cache) == [0] * 5


def test_fully_simple_torus_rows(quad, cache):
    for l, row in rt.FULLY_SIMPLE_TORI.items():
        assert extract_fullysimple(quad, 1, (l,), rt.Q_MAX, cache) == list(row)


def test_torus_rows_against_enumeration(quad, cache):
    for q in range(3):
        census = enumerate_maps((2,), (4,) * q)
        assert census.count(1, ORD_CLASS, CONNECTED) == rt.ORDINARY_TORI[2][q]
        assert census.count(1, FULLY_SIMPLE, CONNECTED) == rt.FULLY_SIMPLE_TORI[2][q]


def test_torus_closed_forms(quad, cache):
    got = cache.amplitude(ORDINARY, 1, 1).rational_form()
    assert got.equals(ordinary_torus_form(quad))
    got = cache.amplitude(EXCHANGED, 1, 1).rational_form()
    assert got.equals(fully_simple_torus_form(quad))


def test_pants_rows_and_enumeration(quad, cache):
    row = extract_ordinary(quad, 0, (2, 2, 2), 3, cache)
    assert row == [8, 96, 1080, 12096]
    for q in range(3):
        census = enumerate_maps((2, 2, 2), (4,) * q)
        assert census.count(0, ORD_CLASS, CONNECTED) == row[q]


def test_pants_residue_formula(quad, cache):
    for role in (ORDINARY, EXCHANGED):
        assert pants_amplitude(quad, role, cache).agrees_with(
            cache.amplitude(role, 0, 3))


def test_marked_quadrangle_derivative(quad, cache):
    # marking one of the Q quadrangles of a torus opens it into a
    # length-4 boundary: 4 dF_l/dt = F_{l,4}
    for l in (2, 4):
        torus = rt.ORDINARY_TORI[l]
        pair = extract_ordinary(quad, 1, (l, 4), rt.Q_MAX - 1, cache)
        assert pair == [4 * (q + 1) * torus[q + 1] for q in range(rt.Q_MAX)]


def test_amplitude_invariants(quad, cache):
    for role, g, n in ((ORDINARY, 1, 1), (ORDINARY, 0, 3), (ORDINARY, 1, 2),
                       (EXCHANGED, 1, 1), (EXCHANGED, 0, 3)):
        amp = cache.amplitude(role, g, n)
        assert amp.is_symmetric()
        assert amp.max_order() <= pole_cap(g, n)
        # no order-1 slot ever appears: the recursion output is residue-free
        assert all(k >= 2 for key in amp.terms for _, k in key)


def test_exchanged_coefficients_carry_the_surd(quad, cache):
    amp = cache.amplitude(EXCHANGED, 0, 3)
    assert any(any(q.surd for q in c.coeffs) for c in amp.terms.values())
    for c in amp.terms.values():
        for e, q in zip(range(c.offset, c.offset + len(c.coeffs)), c.coeffs):
            assert (q.surd == 0) if e % 2 == 0 else (q.rat == 0)


def test_extraction_delegates_to_transforms(quad, cache):
    assert extract_ordinary(quad, 0, (4,), 6) == \
        ordinary_disks(quad, 4).row((4,), 6)
    assert extract_ordinary(quad, 0, (2, 2), 5) == \
        list(rt.ORDINARY_CYLINDERS[(2, 2)][:6])
    disks = ordinary_disks(quad, 2)
    fsd = fully_simple_disks(disks)
    cyl = ordinary_cylinders(quad, 1)
    fscyl = fully_simple_cylinders(simple_cylinders(cyl, fsd, 1), fsd, 1)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        row = extract_fullysimple(quad, 0, (1, 1), 8)
    assert row == fscyl.row((1, 1), 8)
    assert row == t_coeffs(cylinder_11_series(20), 8)


def test_anomaly_report():
    clean = [Fraction(0), Fraction(3), Fraction(12)]
    assert fullysimple_anomalies(clean) == []
    dirty = [Fraction(1), Fraction(-2), Fraction(7, 3)]
    assert fullysimple_anomalies(dirty) == [(1, Fraction(-2)), (2, Fraction(7, 3))]


def test_request_validation(quad, gauss, cache):
    with pytest.raises(ValueError, match="unknown curve role"):
        eo_amplitude(quad, "mixed", 1, 1)
    for g, n in ((0, 1), (0, 2), (0, 0), (-1, 3)):
        with pytest.raises(ValueError, match="unstable range"):
            cache.amplitude(ORDINARY, g, n)
    with pytest.raises(ValueError, match="below the requested"):
        eo_amplitude(quad, ORDINARY, 1, 1, u_order=ORDER + 2)
    with pytest.raises(ValueError, match="one-variable amplitude"):
        cache.amplitude(ORDINARY, 0, 3).rational_form()
    with pytest.raises(ValueError, match="positive integers"):
        extract_ordinary(quad, 1, (0, 2), 4)
    with pytest.raises(ValueError, match="positive integers"):
        extract_fullysimple(quad, 1, (), 4)
