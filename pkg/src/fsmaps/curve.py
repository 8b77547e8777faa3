"""Disk spectral curves for polynomial potentials.

The one-cut solution parametrizes x through the Zhukovsky variable,
x(z) = alpha + gamma (z + 1/z), and the disk resolvent becomes a Laurent
polynomial w(z): the strictly negative z-part of V'(x(z)).  Both projections
x and w then have finitely many simple ramification points, which is all the
recursion downstream needs.
"""
from __future__ import annotations

from fractions import Fraction

from .ring import Q3
from .series import USeries
from .zpoly import EXACT, LocalSeries, RationalForm, ZPoly


def _coerce_weight(value, order: int) -> USeries:
    if isinstance(value, USeries):
        return value
    if isinstance(value, (int, Fraction, Q3)):
        return USeries.const(value, order)
    raise TypeError(f"potential weight {value!r}")


class DiskCurve:
    """Solved disk data: Zhukovsky coefficients and both projections."""

    __slots__ = ("potential", "order", "alpha", "gamma", "x_zpoly", "w_zpoly",
                 "x_of_z", "w_of_z", "_w_branch")

    def __init__(self, potential, order, alpha, gamma, x_zpoly, w_zpoly):
        self.potential = potential
        self.order = order
        self.alpha = alpha
        self.gamma = gamma
        self.x_zpoly = x_zpoly
        self.w_zpoly = w_zpoly
        self.x_of_z = RationalForm.from_zpoly(x_zpoly)
        self.w_of_z = RationalForm.from_zpoly(w_zpoly)
        self._w_branch = None

    def __repr__(self):
        degs = sorted(self.potential)
        return f"DiskCurve(degrees={degs}, order={self.order})"

    @property
    def w_branch(self) -> list[USeries]:
        if self._w_branch is None:
            self._w_branch = w_branch_points(self)
        return self._w_branch


class LocalDeck:
    """Local sheet-exchange involution at a simple ramification point."""

    __slots__ = ("center", "iota", "order")

    def __init__(self, center: USeries, iota: LocalSeries, order: int):
        self.center = center
        self.iota = iota
        self.order = order

    def coeff(self, k: int) -> USeries:
        return self.iota.coeff(k)


def _vprime_of_x(potential: dict[int, USeries], x: ZPoly) -> ZPoly:
    """V'(x(z)) = x(z) - sum_d t_d x(z)^{d-1} as a Laurent polynomial."""
    top = max((d - 1 for d in potential), default=0)
    powers = {0: ZPoly.const(USeries.const(1, EXACT))}
    acc = powers[0]
    for e in range(1, top + 1):
        acc = acc * x
        powers[e] = acc
    out = x
    for d, td in potential.items():
        out = out - powers[d - 1].scale(td)
    return out


def solve_disk_curve(potential: dict, order: int) -> DiskCurve:
    """Order-by-order solution of the two moment constraints
    [z^0] V'(x(z)) = 0 and [z^-1] V'(x(z)) = 1/gamma."""
    if order < 1:
        raise ValueError("order must be positive")
    pot: dict[int, USeries] = {}
    for d, value in potential.items():
        if not isinstance(d, int) or d < 1:
            raise ValueError(f"potential degree {d!r} must be a positive integer")
        td = _coerce_weight(value, order)
        if td.is_zero():
            continue
        if td.val < 1:
            raise ValueError(f"potential weight t_{d} must be formal (positive u-valuation)")
        pot[d] = td

    alpha = USeries.zero(order)
    gamma = USeries.const(1, order)
    one = USeries.const(1, order)
    for _ in range(order + 4):
        x = ZPoly.from_dict({-1: gamma, 0: alpha, 1: gamma})
        new_alpha = USeries.zero(order)
        s_recip = USeries.zero(order)
        acc = ZPoly.const(USeries.const(1, EXACT))
        top = max((d - 1 for d in pot), default=0)
        powers = {0: acc}
        for e in range(1, top + 1):
            acc = acc * x
            powers[e] = acc
        for d, td in pot.items():
            new_alpha = new_alpha + powers[d - 1].coeff(0) * td
            s_recip = s_recip + powers[d - 1].coeff(-1) * td
        new_gamma = (one + gamma * s_recip).sqrt()
        if new_alpha == alpha and new_gamma == gamma:
            break
        alpha, gamma = new_alpha, new_gamma
    x = ZPoly.from_dict({-1: gamma, 0: alpha, 1: gamma})
    vpx = _vprime_of_x(pot, x)
    if not vpx.coeff(0).is_zero():
        raise ValueError("disk solve did not converge: [z^0] constraint violated")
    if not vpx.coeff(-1).agrees_with(gamma.inverse()):
        raise ValueError("disk solve did not converge: [z^-1] constraint violated")
    w = ZPoly.from_dict({e: vpx.coeff(e) for e in range(vpx.lo, 0)})
    return DiskCurve(pot, order, alpha, gamma, x, w)


def w_branch_points(curve: DiskCurve) -> list[USeries]:
    """All zeros of dw/dz expressible in the coefficient ring.

    Supported shapes: after clearing the pole at z = 0, a polynomial of
    degree <= 2, or of degree <= 4 with only even exponents (the relevant
    cases for quadrangulation-type potentials); anything else aborts.
    """
    dw = curve.w_zpoly.derivative()
    if dw.is_zero():
        return []
    q = dw.shift(-dw.lo)
    exps = [e for e in range(q.lo, q.hi + 1) if not q.coeff(e).is_zero()]
    deg = max(exps)
    roots: list[USeries] = []
    if deg == 0:
        return []
    if deg == 1:
        roots = [-(q.coeff(0) / q.coeff(1))]
    elif all(e % 2 == 0 for e in exps) and deg <= 4:
        # biquadratic in y = z^2
        if deg == 2:
            ys = [-(q.coeff(0) / q.coeff(2))]
        else:
            a, b, c = q.coeff(4), q.coeff(2), q.coeff(0)
            disc = (b * b - a * c.scale(4)).sqrt()
            inv2a = a.scale(2).inverse()
            ys = [(-b + disc) * inv2a, (-b - disc) * inv2a]
        for y in ys:
            if y.is_zero():
                continue
            r = y.sqrt()
            roots.extend([r, -r])
    elif deg == 2:
        a, b, c = q.coeff(2), q.coeff(1), q.coeff(0)
        disc = (b * b - a * c.scale(4)).sqrt()
        inv2a = a.scale(2).inverse()
        roots = [(-b + disc) * inv2a, (-b - disc) * inv2a]
    else:
        raise ValueError("cannot locate dw zeros in Q(sqrt3)[[u]] for this potential shape")
    # polish away division artifacts and check each root honestly
    dwd = dw.derivative()
    out = []
    for r in roots:
        for _ in range(2):
            val = dw.eval_at(r)
            if val.is_zero():
                break
            r = r - val / dwd.eval_at(r)
        if not dw.eval_at(r).is_zero():
            raise ValueError("branch point refinement failed")
        out.append(r)
    return out


def local_deck(curve: DiskCurve, b: USeries, zeta_order: int) -> LocalDeck:
    """Sheet-exchange series at a simple zero b of dw.

    Writes w(b + zeta) - w(b) = e2 * y(zeta)^2 with y = zeta + O(zeta^2);
    the deck is then iota = y^{-1}(-y), computed by Lagrange inversion.
    """
    if zeta_order < 2:
        raise ValueError("zeta_order must be at least 2")
    horizon = zeta_order + 4
    w_loc = curve.w_zpoly.taylor_at(b, horizon)
    e1 = w_loc.coeff(1)
    if not e1.is_zero():
        raise ValueError("not a zero of dw to the working order")
    e2 = w_loc.coeff(2)
    if e2.is_zero():
        raise ValueError("w''(b) not invertible at leading u-order")
    # (w(b+zeta) - w(b)) / (e2 zeta^2) = 1 + h(zeta)
    e2inv = e2.inverse()
    shifted = LocalSeries(0, [w_loc.coeff(2 + j) * e2inv for j in range(horizon - 2)],
                          horizon - 2)
    y = LocalSeries.var(horizon - 1) * shifted.sqrt().truncate(horizon - 2)
    # Lagrange inversion of y (valuation 1, unit lead)
    ratio = (y.shift(-1)).inverse()  # (zeta / y) as a series
    n = y.horizon
    bcoef = []
    upow = LocalSeries.const(USeries.const(1, EXACT), n)
    for m in range(1, n):
        upow = upow * ratio
        bcoef.append(upow.coeff(m - 1).scale(Fraction(1, m)))
    yinv = LocalSeries(1, bcoef, n)
    iota = yinv.compose(-y).truncate(zeta_order + 1)
    return LocalDeck(b, iota, zeta_order)


def x_local_deck(a: int, zeta_order: int) -> LocalDeck:
    """Exact local form of the global deck z -> 1/z at z = a, a in {1, -1}:
    iota(zeta) = -zeta/(1 + a zeta)."""
    if a not in (1, -1):
        raise ValueError("x-branch points sit at z = 1 and z = -1")
    coeffs = []
    sign = -1
    for k in range(1, zeta_order + 1):
        coeffs.append(USeries.const(sign, EXACT))
        sign *= -a
    iota = LocalSeries(1, coeffs, zeta_order + 1)
    return LocalDeck(USeries.const(a, EXACT), iota, zeta_order)
