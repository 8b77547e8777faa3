"""Boundary generating series of a disk curve and the transforms between them.

A curve with data x(z), w(z) encodes several families of boundary series.
On the ordinary side the disk series is the large-x expansion

    W(x) = sum_{l >= 0} F_l x^(-l-1),

and the cylinder series carries coefficients F_(l1,l2).  On the fully
simple side the roles of x and w swap and the disk series expands at
small w,

    X(w) = sum_{k >= 0} H_k w^(k-1),

with X the functional inverse of W.  Between the two sit the simple and
mixed cylinder families.  Every series here is a table of u-series
coefficients indexed by boundary lengths; the BoundarySeries wrapper
keeps the table together with its kind tag and length cutoff.
"""

from __future__ import annotations

from fractions import Fraction

from .curve import DiskCurve
from .series import USeries, t_coeffs
from .zpoly import (
    EXACT,
    INFINITY,
    LocalSeries,
    RationalForm,
    ZPoly,
    series_reversion,
    z_residue,
)

# kind tags for BoundarySeries tables
ORDINARY_DISKS = "W"
FULLY_SIMPLE_DISKS = "X"
ORDINARY_CYLINDERS = "W2"
SIMPLE_CYLINDERS = "Y2"
MIXED_CYLINDERS = "Y11"
FULLY_SIMPLE_CYLINDERS = "X2"

_KINDS = (
    ORDINARY_DISKS,
    FULLY_SIMPLE_DISKS,
    ORDINARY_CYLINDERS,
    SIMPLE_CYLINDERS,
    MIXED_CYLINDERS,
    FULLY_SIMPLE_CYLINDERS,
)

# kinds whose tables are symmetric under swapping the two lengths
_SYMMETRIC = (ORDINARY_CYLINDERS, SIMPLE_CYLINDERS, FULLY_SIMPLE_CYLINDERS)


class BoundarySeries:
    """A table of boundary-length indexed u-series with a kind tag.

    Keys are length tuples: (l,) for disk kinds, (l1, l2) for cylinder
    kinds.  For the mixed kind "Y11" the key order is (simple length,
    ordinary length).  cutoff is the largest length the table covers.
    """

    __slots__ = ("kind", "table", "cutoff")

    def __init__(self, kind: str, table: dict, cutoff: int):
        if kind not in _KINDS:
            raise ValueError(f"unknown boundary series kind {kind!r}")
        self.kind = kind
        self.table = dict(table)
        self.cutoff = cutoff

    def value(self, lengths) -> USeries:
        key = tuple(lengths)
        if key not in self.table and self.kind in _SYMMETRIC:
            key = key[::-1]
        try:
            return self.table[key]
        except KeyError:
            raise KeyError(
                f"lengths {tuple(lengths)} not in {self.kind} table "
                f"(cutoff {self.cutoff})"
            ) from None

    def row(self, lengths, q_max: int) -> list[Fraction]:
        """Map counts [t^0], ..., [t^q_max] at the given boundary lengths."""
        what = f"{self.kind}{tuple(lengths)}"
        return t_coeffs(self.value(lengths), q_max, what)

    def __repr__(self):
        return f"BoundarySeries({self.kind!r}, {len(self.table)} entries, cutoff={self.cutoff})"


# -- disks ----------------------------------------------------------------


def ordinary_disks(curve: DiskCurve, l_max: int) -> BoundarySeries:
    """Moments F_l = -Res_{z=inf} x(z)^l w(z) dx(z) for l = 0..l_max."""
    x = curve.x_zpoly
    wdx = curve.w_zpoly * x.derivative()
    table = {}
    xpow = ZPoly.const(1)
    for l in range(l_max + 1):
        f = RationalForm.from_zpoly(xpow * wdx)
        table[(l,)] = -z_residue(f, INFINITY)
        if l < l_max:
            xpow = xpow * x
    return BoundarySeries(ORDINARY_DISKS, table, l_max)


def fully_simple_disks(disks: BoundarySeries) -> BoundarySeries:
    """Invert W to X by Lagrange reversion; entry k is H_k."""
    if disks.kind != ORDINARY_DISKS:
        raise ValueError("fully_simple_disks needs an ordinary disk table")
    fs = [disks.table[(l,)] for l in range(disks.cutoff + 1)]
    hs = series_reversion(fs)
    return BoundarySeries(
        FULLY_SIMPLE_DISKS, {(k,): hs[k] for k in range(len(hs))}, disks.cutoff
    )


def ordinary_from_fully_simple(fs_disks: BoundarySeries) -> BoundarySeries:
    """Recover the F_l table from an H_k table; inverse of fully_simple_disks.

    With Hhat(w) = sum_k H_k w^k one has X(w) = Hhat(w)/w, so 1/X is the
    power series s(w) = w/Hhat(w) and W must satisfy W(X(w)) = w.  Writing
    W(x) = Fhat(1/x)/x gives Fhat = Hhat o s^(-1), computed by Lagrange
    inversion of s.
    """
    if fs_disks.kind != FULLY_SIMPLE_DISKS:
        raise ValueError("ordinary_from_fully_simple needs a fully simple disk table")
    hs = [fs_disks.table[(k,)] for k in range(fs_disks.cutoff + 1)]
    if not hs or hs[0].is_zero():
        raise ValueError("leading coefficient must be invertible")
    n = len(hs)
    horizon = n + 1
    hhat = LocalSeries(0, hs, horizon)
    # Lagrange: [u^m] s^(-1) = (1/m) [w^(m-1)] (w/s(w))^m = (1/m) [w^(m-1)] Hhat^m
    c = []
    hpow = hhat
    for m in range(1, horizon):
        c.append(hpow.coeff(m - 1).scale(Fraction(1, m)))
        if m + 1 < horizon:
            hpow = hpow * hhat
    sinv = LocalSeries(1, c, horizon)
    fhat = hhat.compose(sinv)
    table = {(l,): fhat.coeff(l) for l in range(n)}
    return BoundarySeries(ORDINARY_DISKS, table, fs_disks.cutoff)


# -- ordinary cylinders ---------------------------------------------------


def ordinary_cylinders(curve: DiskCurve, l_max: int) -> BoundarySeries:
    """Two-boundary moments from the universal genus-0 pair kernel.

    On a genus-0 curve the connected cylinder function is governed by
    B = dz1 dz2 / (z1 - z2)^2, which after extracting x-powers leaves

        F_(l1,l2) = sum_{m >= 1} m [z^m](x^l1) [z^m](x^l2).
    """
    x = curve.x_zpoly
    pos = {}
    xpow = ZPoly.const(1)
    for l in range(1, l_max + 1):
        xpow = xpow * x
        pos[l] = [xpow.coeff(m) for m in range(1, l + 1)]
    table = {}
    for l1 in range(1, l_max + 1):
        for l2 in range(1, l1 + 1):
            acc = USeries.zero(EXACT)
            for m in range(1, min(l1, l2) + 1):
                acc = acc + (pos[l1][m - 1] * pos[l2][m - 1]).scale(m)
            table[(l1, l2)] = acc
            table[(l2, l1)] = acc
    return BoundarySeries(ORDINARY_CYLINDERS, table, l_max)


# -- the transfer kernel --------------------------------------------------


def _transfer_table(fs_disks: BoundarySeries, k_max: int) -> list[list[USeries]]:
    """T[l][m] = [w^m] X(w)^(-l-1) X'(w) for l = 0..k_max, m = 0..k_max-1.

    These kernels convert an ordinary length-l slot into a simple
    length-(m+1) slot.  Since X(w)^(-l-1) X'(w) = -(1/l) d/dw X^(-l),
    the coefficient vanishes for m < l - 1, so only l <= k contribute
    to a length-k simple boundary.
    """
    if fs_disks.kind != FULLY_SIMPLE_DISKS:
        raise ValueError("transfer table needs a fully simple disk table")
    if fs_disks.cutoff < k_max:
        raise ValueError(
            f"fully simple disk data to length {k_max} is required, "
            f"have cutoff {fs_disks.cutoff}"
        )
    hs = [fs_disks.table[(k,)] for k in range(fs_disks.cutoff + 1)]
    X = LocalSeries(-1, hs, fs_disks.cutoff)
    dX = X.derivative()
    S = X.inverse()
    rows = []
    spow = S
    for l in range(k_max + 1):
        Tl = spow * dX
        rows.append([Tl.coeff(m) for m in range(k_max)])
        if l < k_max:
            spow = spow * S
    return rows


# -- simple and mixed cylinders -------------------------------------------


def simple_cylinders(
    cylinders: BoundarySeries, fs_disks: BoundarySeries, k_max: int | None = None
) -> BoundarySeries:
    """G_(k1,k2) from the substitution Y2(w1,w2) = W2(X(w1), X(w2)) X'(w1) X'(w2)."""
    if cylinders.kind != ORDINARY_CYLINDERS:
        raise ValueError("simple_cylinders needs an ordinary cylinder table")
    if k_max is None:
        k_max = min(cylinders.cutoff, fs_disks.cutoff)
    if cylinders.cutoff < k_max:
        raise ValueError(
            f"ordinary cylinder data to length {k_max} is required, "
            f"have cutoff {cylinders.cutoff}"
        )
    T = _transfer_table(fs_disks, k_max)
    table = {}
    for k1 in range(1, k_max + 1):
        for k2 in range(1, k1 + 1):
            acc = USeries.zero(EXACT)
            for l1 in range(1, k1 + 1):
                for l2 in range(1, k2 + 1):
                    term = cylinders.table[(l1, l2)] * T[l1][k1 - 1] * T[l2][k2 - 1]
                    acc = acc + term
            table[(k1, k2)] = acc
            table[(k2, k1)] = acc
    return BoundarySeries(SIMPLE_CYLINDERS, table, k_max)


def mixed_cylinders(
    cylinders: BoundarySeries, fs_disks: BoundarySeries, k_max: int | None = None
) -> BoundarySeries:
    """G_(k|l): first boundary simple of length k, second ordinary of length l.

    Substituting x1 = X(w1) in -W2 and keeping the second slot ordinary
    gives G_(k|l) = -sum_{l1 <= k} F_(l1,l) T_l1[k-1]; the sign makes the
    k = l = 1 entry agree with the ordinary table, where a length-1
    boundary is simple automatically.
    """
    if cylinders.kind != ORDINARY_CYLINDERS:
        raise ValueError("mixed_cylinders needs an ordinary cylinder table")
    if k_max is None:
        k_max = min(cylinders.cutoff, fs_disks.cutoff)
    T = _transfer_table(fs_disks, k_max)
    table = {}
    for k in range(1, k_max + 1):
        for l in range(1, cylinders.cutoff + 1):
            acc = USeries.zero(EXACT)
            for l1 in range(1, k + 1):
                acc = acc + cylinders.table[(l1, l)] * T[l1][k - 1]
            table[(k, l)] = -acc
    return BoundarySeries(MIXED_CYLINDERS, table, k_max)


def fully_simple_cylinders(
    simple: BoundarySeries, fs_disks: BoundarySeries, k_max: int | None = None
) -> BoundarySeries:
    """H_(k1,k2) = G_(k1,k2) minus the disk log correction.

    X2 and Y2 differ by the second mixed derivative of
    log(X(w1) - X(w2)) - log(1/w1 - 1/w2); expanding the logs turns the
    correction into sum_{m >= 1} A^m / m with

        A(w1, w2) = w1 w2 sum_k H_k sum_{i+j=k-2} w1^i w2^j,

    so H_(k1,k2) = G_(k1,k2) - k1 k2 [w1^k1 w2^k2] sum_m A^m / m.
    The disk table must reach length k1 + k2 for exact coefficients.
    """
    if simple.kind != SIMPLE_CYLINDERS:
        raise ValueError("fully_simple_cylinders needs a simple cylinder table")
    if k_max is None:
        k_max = simple.cutoff
    if simple.cutoff < k_max:
        raise ValueError(
            f"simple cylinder data to length {k_max} is required, "
            f"have cutoff {simple.cutoff}"
        )
    if fs_disks.cutoff < 2 * k_max:
        raise ValueError(
            f"fully simple disk data to length {2 * k_max} is required "
            f"for the log correction, have cutoff {fs_disks.cutoff}"
        )
    # A as a truncated bivariate table {(a, b): H_(a+b)} with 1 <= a, b <= k_max
    A = {}
    for a in range(1, k_max + 1):
        for b in range(1, k_max + 1):
            h = fs_disks.table[(a + b,)]
            if not h.is_zero():
                A[(a, b)] = h
    log_corr = {}
    power = dict(A)
    m = 1
    while power:
        for key, val in power.items():
            scaled = val.scale(Fraction(1, m))
            if key in log_corr:
                log_corr[key] = log_corr[key] + scaled
            else:
                log_corr[key] = scaled
        m += 1
        nxt = {}
        for (a1, b1), v1 in power.items():
            for (a2, b2), v2 in A.items():
                a, b = a1 + a2, b1 + b2
                if a > k_max or b > k_max:
                    continue
                prod = v1 * v2
                if (a, b) in nxt:
                    nxt[(a, b)] = nxt[(a, b)] + prod
                else:
                    nxt[(a, b)] = prod
        power = nxt
    table = {}
    for k1 in range(1, k_max + 1):
        for k2 in range(1, k1 + 1):
            acc = simple.table[(k1, k2)]
            corr = log_corr.get((k1, k2))
            if corr is not None:
                acc = acc - corr.scale(k1 * k2)
            table[(k1, k2)] = acc
            table[(k2, k1)] = acc
    return BoundarySeries(FULLY_SIMPLE_CYLINDERS, table, k_max)
