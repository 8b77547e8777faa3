"""Closed forms for the one-boundary torus rows of the quadrangulation model.

Everything in this module is specific to the curve solved from the pure
quadrangulation potential.  The building block is

    phi(m) = c^(2m) (1 + (m-1) s) / s^2,    s = sqrt(1 - 12t),

with c the disk radius series, c^2 = (1 - s)/(6t).  Ordinary torus rows
are (2m+1)!/(6 m!^2) phi(m) at boundary length 2(m+1); the fully simple
rows are (3m)! t^(m+1)/(4 m! (2m-1)!) phi(3m+1) at length 2m.  Both
torus amplitudes are rational in z over the coefficient field, and the
builders at the bottom return them as RationalForm data; the residue
recursion reproduces them exactly.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial

from .curve import DiskCurve
from .ring import Q3
from .series import USeries, t_coeffs
from .zpoly import RationalForm, ZPoly

__all__ = [
    "discriminant_root",
    "radius_squared",
    "phi",
    "r_coefficient",
    "phi_from_coefficients",
    "ordinary_torus_series",
    "fully_simple_torus_series",
    "ordinary_torus_row",
    "fully_simple_torus_row",
    "genus1_ordinary",
    "genus1_fullysimple",
    "cylinder_11_series",
    "h11_closed",
    "bernardi_fusy",
    "ordinary_torus_form",
    "fully_simple_torus_form",
]


def discriminant_root(order: int) -> USeries:
    """s = sqrt(1 - 12t) as a u-series truncated at the given order."""
    one = USeries.const(Fraction(1), order)
    return (one - USeries.t(order).scale(12)).sqrt()


def radius_squared(order: int) -> USeries:
    """c^2 = (1 - s)/(6t); agrees with gamma^2 of the solved curve."""
    one = USeries.const(Fraction(1), order)
    return (one - discriminant_root(order)) / USeries.t(order).scale(6)


def phi(m: int, order: int) -> USeries:
    if m < 0:
        raise ValueError("phi index must be nonnegative")
    s = discriminant_root(order)
    one = USeries.const(Fraction(1), order)
    return (radius_squared(order) ** m) * (one + s.scale(m - 1)) * (s * s).inverse()


def r_coefficient(m: int, i: int) -> Fraction:
    """Coefficient of (3t)^i in c^(2m)/(1 - 12t), in closed form.

    A binomial with negative top counts as zero; that case is reached
    only at m = 0, where the value collapses to 4^i.
    """
    total = Fraction(2 ** (m + 2 * i))
    for j in range(0, m // 2 + 1):
        top = m - j - 1
        if top < 0:
            continue
        total -= Fraction((-1) ** j * comb(top, j) * comb(2 * (m + i - j), m + i - j), 2)
    return total


def phi_from_coefficients(m: int, q_max: int) -> list[Fraction]:
    """t-coefficients of phi(m) assembled from r_coefficient alone.

    Uses phi = (c^(2m)/s^2) (m - (m-1)(1-s)) together with the
    Catalan-type expansion [t^k](1-s) = (2 3^k/k) binom(2(k-1), k-1);
    the 3-powers of that expansion are already absorbed by the (3t)^n
    grading, so only 2/k binom(2(k-1), k-1) appears inside the sum.
    """
    r = [r_coefficient(m, i) for i in range(q_max + 1)]
    out = []
    for n in range(q_max + 1):
        val = m * r[n]
        for i in range(n):
            k = n - i
            val += (1 - m) * r[i] * Fraction(2, k) * comb(2 * (k - 1), k - 1)
        out.append(val * 3**n)
    return out


def _even_length(length: int) -> int:
    if length < 2 or length % 2:
        raise ValueError("torus boundary lengths are even and at least 2")
    return length // 2


def ordinary_torus_series(length: int, order: int) -> USeries:
    """Generating series of genus-one quadrangulations with one boundary."""
    m = _even_length(length) - 1
    return phi(m, order).scale(Fraction(factorial(2 * m + 1), 6 * factorial(m) ** 2))


def fully_simple_torus_series(length: int, order: int) -> USeries:
    """Fully simple counterpart; the phi index triples and shifts."""
    m = _even_length(length)
    pref = Fraction(factorial(3 * m), 4 * factorial(m) * factorial(2 * m - 1))
    return (phi(3 * m + 1, order) * (USeries.t(order) ** (m + 1))).scale(pref)


def ordinary_torus_row(length: int, q_max: int) -> list[Fraction]:
    s = ordinary_torus_series(length, 2 * q_max + 6)
    return t_coeffs(s, q_max, f"F[1]_{length}")


def fully_simple_torus_row(length: int, q_max: int) -> list[Fraction]:
    s = fully_simple_torus_series(length, 2 * q_max + 6)
    return t_coeffs(s, q_max, f"H[1]_{length}")


def cylinder_11_series(order: int) -> USeries:
    """Fully simple cylinder with two length-1 boundaries: c^6 t.

    Splitting a torus boundary of length 2 at its doubled vertex gives
    either a fully simple torus or this cylinder, so the length-2 rows
    satisfy F = c^6 t + H coefficientwise.
    """
    return (radius_squared(order) ** 3) * USeries.t(order)


def h11_closed(order: int) -> USeries:
    """Alias for the (1,1) fully simple cylinder series."""
    return cylinder_11_series(order)


def genus1_ordinary(m: int, order: int) -> USeries:
    """Ordinary torus series at boundary length 2(m+1), m >= 0."""
    if m < 0:
        raise ValueError("genus-1 index must be nonnegative")
    return ordinary_torus_series(2 * (m + 1), order)


def genus1_fullysimple(m: int, order: int) -> USeries:
    """Fully simple torus series at boundary length 2m, m >= 1."""
    if m < 1:
        raise ValueError("fully simple genus-1 index must be positive")
    return fully_simple_torus_series(2 * m, order)


def _epsilon_squared_scaled(k: int) -> Fraction:
    # epsilon(2l) = (3l)!/(l! (2l-1)!); epsilon(2l+1) carries one sqrt(3),
    # returned here with the surd stripped: (3l+1)!/(l! (2l)!).
    if k % 2 == 0:
        l = k // 2
        return Fraction(factorial(3 * l), factorial(l) * factorial(2 * l - 1))
    l = k // 2
    return Fraction(factorial(3 * l + 1), factorial(l) * factorial(2 * l))


def bernardi_fusy(q: int, lengths) -> Q3:
    """Planar fully simple quadrangulations with q internal quadrangles
    and the given boundary lengths, via the bijective product formula.

    Zero when the total boundary length is odd (no quadrangulation closes
    up) or when the internal vertex count q - L/2 - n + 2 dips negative.
    Each odd boundary contributes one factor sqrt(3); an even number of
    odd boundaries is forced by the parity of L, so the result is a plain
    rational, returned inside Q3 for uniformity.
    """
    ks = [int(k) for k in lengths]
    if q < 0 or not ks or any(k < 1 for k in ks):
        raise ValueError("boundary lengths must be positive and q nonnegative")
    total = sum(ks)
    n_odd = sum(k % 2 for k in ks)
    if total % 2:
        return Q3(0)
    v = q - total // 2 - len(ks) + 2
    if v < 0:
        return Q3(0)
    edges = total // 2 + 2 * q
    alpha = (
        Fraction(3) ** (q - total // 2)
        * factorial(edges - 1)
        / (factorial(v) * factorial(total + q))
    )
    value = alpha * Fraction(3) ** (n_odd // 2)
    for k in ks:
        value *= _epsilon_squared_scaled(k)
    assert n_odd % 2 == 0 and value.denominator == 1 and value >= 0
    return Q3(value, Fraction(0))


def _quadrangulation_data(curve: DiskCurve):
    if sorted(curve.potential) != [4]:
        raise ValueError("closed torus forms require the pure quadrangulation potential")
    order = curve.order
    one = USeries.const(Fraction(1), order)
    y = USeries.t(order) * (curve.gamma**4)
    return one, y


def ordinary_torus_form(curve: DiskCurve) -> RationalForm:
    """z (y z^4 + (1-5y) z^2 + y) / ((z^2-1)^4 (1-3y)^2), y = t c^4."""
    one, y = _quadrangulation_data(curve)
    num = ZPoly.from_dict({5: y, 3: one - y.scale(5), 1: y})
    zsq = ZPoly.from_dict({2: one, 0: -one})
    snf = one - y.scale(3)
    den = ZPoly.const(snf * snf) * zsq * zsq * zsq * zsq
    return RationalForm(num, den)


def fully_simple_torus_form(curve: DiskCurve) -> RationalForm:
    """z (3y^2 (3y-2) z^4 + 9y^3 (9y-1) z^2 - 81 y^5) / ((z^2-3y)^4 (1-3y)^2).

    The poles sit at the branch points of the w-projection, z^2 = 3y.
    """
    one, y = _quadrangulation_data(curve)
    num = ZPoly.from_dict(
        {
            5: (y * y).scale(3) * (y.scale(3) - one.scale(2)),
            3: (y**3).scale(9) * (y.scale(9) - one),
            1: (y**5).scale(-81),
        }
    )
    zsq = ZPoly.from_dict({2: one, 0: -y.scale(3)})
    snf = one - y.scale(3)
    den = ZPoly.const(snf * snf) * zsq * zsq * zsq * zsq
    return RationalForm(num, den)
