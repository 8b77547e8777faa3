"""Residue recursion for map amplitudes over a disk curve.

Amplitudes live in a pole basis: an amplitude with n marked variables is a
finite sum of products of one-variable forms dz/(z - b)^k anchored at the
branch points b of one of the two projections.  The recursion runs in two
roles sharing omega_{0,2} = dz1 dz2 / (z1 - z2)^2:

    ordinary   omega_{0,1} = w dx, residues at the zeros of dx (z = +-1),
    exchanged  omega_{0,1} = x dw, residues at the zeros of dw.

Boundary tables follow by iterated residues at infinity: x^l against the
ordinary amplitudes with an overall (-1)^n, w^{-k} against the exchanged
ones.  The unstable tables (0,1) and (0,2) are series transforms, not
residue data; extraction delegates those to the transforms module.
"""
from __future__ import annotations

import warnings
from fractions import Fraction
from itertools import combinations, permutations

from . import transforms as _transforms
from .curve import DiskCurve, local_deck, x_local_deck
from .series import USeries, t_coeffs
from .zpoly import EXACT, LocalSeries, RationalForm, ZPoly

ORDINARY = "ordinary"
EXCHANGED = "exchanged"
_ROLES = (ORDINARY, EXCHANGED)

_ONE = USeries.const(1, EXACT)


def _uzero() -> USeries:
    return USeries.zero(EXACT)


def pole_cap(g: int, n: int) -> int:
    """Enforced per-variable pole-order cap; two above the expected order."""
    return 6 * g - 4 + 2 * n + 2


class IntegralityWarning(UserWarning):
    """A fully simple table entry came out negative or non-integer."""


class Amplitude:
    """A (g, n) amplitude as pole-basis data.

    terms maps an n-tuple of slots, each slot a pair (branch index, pole
    order k >= 1), to the USeries coefficient of prod_i dz_i/(z_i - b_i)^k_i.
    centers lists the branch points the slot indices refer to.
    """

    __slots__ = ("genus", "nvars", "role", "terms", "centers")

    def __init__(self, genus: int, nvars: int, role: str, terms: dict, centers: tuple):
        self.genus = genus
        self.nvars = nvars
        self.role = role
        self.terms = terms
        self.centers = centers

    def __repr__(self):
        return (f"Amplitude(g={self.genus}, n={self.nvars}, {self.role}, "
                f"{len(self.terms)} terms)")

    def coeff(self, key: tuple) -> USeries:
        c = self.terms.get(tuple(key))
        return c if c is not None else _uzero()

    def max_order(self) -> int:
        return max((k for key in self.terms for _, k in key), default=0)

    def is_symmetric(self) -> bool:
        """The stored tensor must not depend on the slot ordering."""
        for key, c in self.terms.items():
            for perm in permutations(key):
                if not self.coeff(perm).agrees_with(c):
                    return False
        return True

    def agrees_with(self, other: "Amplitude") -> bool:
        keys = set(self.terms) | set(other.terms)
        return all(self.coeff(k).agrees_with(other.coeff(k)) for k in keys)

    def eval_at(self, points) -> USeries:
        """Coefficient function at a tuple of sample points (dz factors dropped)."""
        if len(points) != self.nvars:
            raise ValueError(f"amplitude takes {self.nvars} points")
        pts = [p if isinstance(p, USeries) else USeries.const(p, EXACT) for p in points]
        total = _uzero()
        rec: dict[tuple, USeries] = {}
        for key, c in self.terms.items():
            term = c
            for i, (b, k) in enumerate(key):
                f = rec.get((i, b, k))
                if f is None:
                    f = (pts[i] - self.centers[b]).inverse() ** k
                    rec[(i, b, k)] = f
                term = term * f
            total = total + term
        return total

    def rational_form(self) -> RationalForm:
        """One-variable amplitudes as an honest rational function of z."""
        if self.nvars != 1:
            raise ValueError("rational form reconstruction needs a one-variable amplitude")
        tops = [0] * len(self.centers)
        for ((b, k),) in self.terms:
            tops[b] = max(tops[b], k)
        lin = [ZPoly.from_dict({1: _ONE, 0: -c}) for c in self.centers]
        pows: list[list[ZPoly]] = []
        for b, top in enumerate(tops):
            row = [ZPoly.const(_ONE)]
            for _ in range(top):
                row.append(row[-1] * lin[b])
            pows.append(row)
        den = ZPoly.const(_ONE)
        for b, top in enumerate(tops):
            den = den * pows[b][top]
        num = ZPoly.zero()
        for ((b, k),), c in self.terms.items():
            part = pows[b][tops[b] - k]
            for bb, top in enumerate(tops):
                if bb != b:
                    part = part * pows[bb][top]
            num = num + part.scale(c)
        return RationalForm(num, den)


def _assert_clean(c: USeries, what: str) -> None:
    for i, q in enumerate(c.coeffs):
        e = c.offset + i
        if e >= c.order:
            break
        if e % 2:
            if q:
                raise AssertionError(f"{what}: odd u-coefficient at u^{e}: {q}")
        elif q.surd:
            raise AssertionError(f"{what}: sqrt3 part at u^{e}: {q}")


def _assert_balanced(c: USeries, what: str) -> None:
    """Exchanged-role coefficients: rational in even u-degrees, sqrt3 in odd."""
    for i, q in enumerate(c.coeffs):
        e = c.offset + i
        if e >= c.order:
            break
        if e % 2 == 0 and q.surd:
            raise AssertionError(f"{what}: sqrt3 part at even degree u^{e}: {q}")
        if e % 2 and q.rat:
            raise AssertionError(f"{what}: rational part at odd degree u^{e}: {q}")


def _residue_pair(u: LocalSeries, phi: LocalSeries) -> USeries:
    """[zeta^-1] of u * phi without forming the product."""
    if u.is_zero() or phi.is_zero():
        return _uzero()
    if -1 - phi.val >= u.horizon:
        raise ValueError("kernel horizon exhausted in residue pairing")
    if -1 - u.val >= phi.horizon:
        raise ValueError("integrand horizon exhausted in residue pairing")
    acc = _uzero()
    top = -1 - phi.val
    for i, c in enumerate(u.coeffs):
        e = u.offset + i
        if e > top:
            break
        if c.is_zero():
            continue
        j = -1 - e - phi.offset
        if 0 <= j < len(phi.coeffs):
            acc = acc + c * phi.coeffs[j]
    return acc


class _Branch:
    """Local data of one branch point: deck series, kernel, slot expansions."""

    __slots__ = ("index", "center", "iota", "iota_prime", "dinv", "horizon",
                 "_ipow", "_kern", "_loc", "_bslot", "_bself")

    def __init__(self, index: int, center: USeries, iota: LocalSeries,
                 dinv: LocalSeries, horizon: int):
        self.index = index
        self.center = center
        self.iota = iota
        self.iota_prime = iota.derivative()
        self.dinv = dinv
        self.horizon = horizon
        self._ipow = [LocalSeries.const(_ONE, iota.horizon), iota]
        self._kern: dict[int, LocalSeries] = {}
        self._loc: dict[tuple, LocalSeries] = {}
        self._bslot: dict[tuple, LocalSeries] = {}
        self._bself = None

    def iota_pow(self, m: int) -> LocalSeries:
        while len(self._ipow) <= m:
            self._ipow.append(self._ipow[-1] * self.iota)
        return self._ipow[m]

    def kernel(self, m: int) -> LocalSeries:
        """(zeta^m - iota^m) / (2 (f(z) - f(iota z)) g'(z)), half already in dinv."""
        k = self._kern.get(m)
        if k is None:
            mono = LocalSeries(m, (_ONE,), self.horizon + m)
            k = (mono - self.iota_pow(m)) * self.dinv
            self._kern[m] = k
        return k

    def slot_local(self, slot: tuple, centers, conj: bool) -> LocalSeries:
        """Expansion of dz/(z - b)^k at this branch; conj plugs the deck image."""
        b, k = slot
        key = (b, k, conj)
        out = self._loc.get(key)
        if out is not None:
            return out
        if not conj:
            if b == self.index:
                out = LocalSeries(-k, (_ONE,), self.horizon)
            else:
                gap = self.center - centers[b]
                out = LocalSeries(0, (gap, _ONE), self.horizon) ** (-k)
        else:
            if b == self.index:
                out = self.iota_pow(k).inverse() * self.iota_prime
            else:
                out = self.slot_local(slot, centers, False).compose(self.iota) * self.iota_prime
        self._loc[key] = out
        return out

    def pair_slot(self, m: int, conj: bool) -> LocalSeries:
        """omega_{0,2} against an outer variable: the zeta^m channel of the
        expansion 1/(z - z_j)^2 = sum (m+1) zeta^m / (a - z_j)^{m+2}."""
        key = (m, conj)
        out = self._bslot.get(key)
        if out is None:
            if conj:
                out = (self.iota_pow(m) * self.iota_prime).scale(Fraction(m + 1))
            else:
                out = LocalSeries(m, (USeries.const(m + 1, EXACT),), self.horizon)
            self._bslot[key] = out
        return out

    def pair_self(self) -> LocalSeries:
        """omega_{0,2}(z, iota z) with both legs local: iota' / (zeta - iota)^2."""
        if self._bself is None:
            gap = LocalSeries.var(self.iota.horizon) - self.iota
            self._bself = self.iota_prime * gap ** (-2)
        return self._bself


class _Geometry:
    __slots__ = ("branches", "centers", "horizon")

    def __init__(self, branches: list, horizon: int):
        self.branches = branches
        self.centers = tuple(br.center for br in branches)
        self.horizon = horizon


def _build_geometry(curve: DiskCurve, role: str, horizon: int) -> _Geometry:
    work = horizon + 6
    branches = []
    if role == ORDINARY:
        xp = curve.x_zpoly.derivative()
        for index, a in enumerate((1, -1)):
            deck = x_local_deck(a, work)
            wa = curve.w_zpoly.taylor_at(deck.center, work)
            wia = wa.compose(deck.iota)
            d = ((wa - wia) * xp.taylor_at(deck.center, work)).scale(2)
            branches.append(_Branch(index, deck.center, deck.iota, d.inverse(), horizon))
    else:
        wp = curve.w_zpoly.derivative()
        for index, b in enumerate(curve.w_branch):
            deck = local_deck(curve, b, work)
            xa = curve.x_zpoly.taylor_at(b, work)
            xia = xa.compose(deck.iota)
            d = ((xa - xia) * wp.taylor_at(b, work)).scale(2)
            branches.append(_Branch(index, b, deck.iota, d.inverse(), horizon))
    return _Geometry(branches, horizon)


def _phi_budget(g: int, n: int) -> int:
    """Largest total local pole order the bracket can reach for target (g, n)."""
    worst = 0
    if g >= 1:
        if g == 1 and n == 1:
            worst = 2
        else:
            worst = 2 * (6 * (g - 1) - 4 + 2 * (n + 1))
    for h in range(g + 1):
        for i in range(n):
            p1 = 0 if (h, i) == (0, 0) else 6 * h - 4 + 2 * (i + 1)
            hp, ip = g - h, n - 1 - i
            p2 = 0 if (hp, ip) == (0, 0) else 6 * hp - 4 + 2 * (ip + 1)
            if (h, i) != (0, 0) or (hp, ip) != (0, 0):
                worst = max(worst, p1 + p2)
    return worst


class AmplitudeCache:
    """Memoized recursion state for one curve; amplitudes are stored per
    (role, g, n) and never recomputed, geometry grows its horizon on demand."""

    def __init__(self, curve: DiskCurve):
        self.curve = curve
        self._amps: dict[tuple, Amplitude] = {}
        self._geoms: dict[str, _Geometry] = {}
        self._ext: dict[tuple, dict] = {}

    def geometry(self, role: str, horizon: int) -> _Geometry:
        geom = self._geoms.get(role)
        if geom is None or geom.horizon < horizon:
            geom = _build_geometry(self.curve, role, horizon)
            self._geoms[role] = geom
        return geom

    def amplitude(self, role: str, g: int, n: int) -> Amplitude:
        if role not in _ROLES:
            raise ValueError(f"unknown curve role {role!r}")
        if g < 0 or n < 1 or 2 * g - 2 + n <= 0:
            raise ValueError(f"the recursion starts past the unstable range, not at ({g},{n})")
        key = (role, g, n)
        amp = self._amps.get(key)
        if amp is None:
            amp = self._compute(role, g, n)
            self._amps[key] = amp
        return amp

    def _factor_items(self, br: _Branch, centers, role: str, h: int,
                      ivars: tuple, cap: int, conj: bool) -> list:
        """The bracket factor omega_{h, 1+|ivars|} with its first leg plugged
        into this branch (deck image when conj), as triples
        (outer-slot assignment, local series, coefficient)."""
        if h == 0 and len(ivars) == 1:
            j = ivars[0]
            return [({j: (br.index, m + 2)}, br.pair_slot(m, conj),
                     _ONE) for m in range(cap - 1)]
        amp = self.amplitude(role, h, len(ivars) + 1)
        items = []
        for key, c in amp.terms.items():
            items.append((dict(zip(ivars, key[1:])),
                          br.slot_local(key[0], centers, conj), c))
        return items

    def _compute(self, role: str, g: int, n: int) -> Amplitude:
        rest = n - 1
        cap = pole_cap(g, n)
        horizon = 2 * _phi_budget(g, n) + 8
        # settle every child first so the geometry horizon is final
        if g >= 1 and not (g == 1 and rest == 0):
            self.amplitude(role, g - 1, rest + 2)
        for h in range(g + 1):
            for r in range(rest + 1):
                hp, rp = g - h, rest - r
                if (h, r) == (0, 0) or (hp, rp) == (0, 0):
                    continue
                for hh, rr in ((h, r), (hp, rp)):
                    if 2 * hh - 1 + rr > 0:
                        self.amplitude(role, hh, rr + 1)
        geom = self.geometry(role, horizon)
        acc: dict[tuple, USeries] = {}
        for br in geom.branches:
            phi: dict[tuple, LocalSeries] = {}

            def add_phi(jkey: tuple, series: LocalSeries) -> None:
                if series.is_zero():
                    return
                cur = phi.get(jkey)
                phi[jkey] = series if cur is None else cur + series

            if g >= 1:
                if g == 1 and rest == 0:
                    add_phi((), br.pair_self())
                else:
                    low = self.amplitude(role, g - 1, rest + 2)
                    for key, c in low.terms.items():
                        pair = (br.slot_local(key[0], geom.centers, False)
                                * br.slot_local(key[1], geom.centers, True))
                        add_phi(key[2:], pair * c)
            for h in range(g + 1):
                for r in range(rest + 1):
                    for left in combinations(range(rest), r):
                        hp = g - h
                        right = tuple(i for i in range(rest) if i not in left)
                        if (h, r) == (0, 0) or (hp, len(right)) == (0, 0):
                            continue
                        f1 = self._factor_items(br, geom.centers, role, h, left, cap, False)
                        f2 = self._factor_items(br, geom.centers, role, hp, right, cap, True)
                        for asn1, s1, c1 in f1:
                            for asn2, s2, c2 in f2:
                                merged = {**asn1, **asn2}
                                jkey = tuple(merged[i] for i in range(rest))
                                add_phi(jkey, (s1 * s2) * (c1 * c2))
            for jkey, series in phi.items():
                for m in range(1, cap + 2):
                    val = _residue_pair(br.kernel(m), series)
                    if val.is_zero():
                        continue
                    if m + 1 > cap:
                        raise ValueError(
                            f"pole order {m + 1} at branch point {br.index} exceeds "
                            f"the cap {cap} for amplitude ({g},{n})")
                    out_key = ((br.index, m + 1), *jkey)
                    cur = acc.get(out_key)
                    acc[out_key] = val if cur is None else cur + val
        terms = {k: v for k, v in acc.items() if not v.is_zero()}
        check = _assert_clean if role == ORDINARY else _assert_balanced
        for key, c in terms.items():
            check(c, f"amplitude ({g},{n}) {role} term {key}")
        return Amplitude(g, n, role, terms, geom.centers)

    # -- residues at infinity ------------------------------------------------

    def _infinity_base(self, role: str, top: int, horizon: int) -> dict:
        ext = self._ext.get((role, "pows"))
        if ext is None or ext["horizon"] < horizon or len(ext["pows"]) <= top:
            need_h = max(horizon, ext["horizon"] if ext else 0)
            need_top = max(top, len(ext["pows"]) - 1 if ext else 1)
            if role == ORDINARY:
                base = self.curve.x_zpoly.expand_at_infinity(need_h + 2 * need_top + 4)
            else:
                base = self.curve.w_zpoly.expand_at_infinity(
                    need_h + 2 * need_top + 6).inverse()
            pows = [LocalSeries.const(_ONE, base.horizon), base]
            for _ in range(2, need_top + 1):
                pows.append(pows[-1] * base)
            ext = {"horizon": need_h, "pows": pows, "slots": {}}
            self._ext[(role, "pows")] = ext
        return ext

    def slot_residue(self, role: str, power: int, slot: tuple) -> USeries:
        """Res_{z->infinity} f(z)^s dz / (z - b)^k with f = x (ordinary, s = l)
        or f = 1/w (exchanged, s = k_boundary)."""
        b, k = slot
        geom = self.geometry(role, 4)
        ext = self._infinity_base(role, power, power + k + 6)
        memo = ext["slots"]
        key = (power, b, k)
        val = memo.get(key)
        if val is None:
            center = geom.centers[b]
            pole = (LocalSeries(0, (_ONE, -center), power + 4) ** (-k)).shift(k)
            val = -(ext["pows"][power] * pole).coeff(1)
            memo[key] = val
        return val

    def boundary_row(self, role: str, g: int, lengths, q_max: int) -> list:
        amp = self.amplitude(role, g, len(lengths))
        total = _uzero()
        for key, c in amp.terms.items():
            term = c
            for power, slot in zip(lengths, key):
                term = term * self.slot_residue(role, power, slot)
            total = total + term
        if role == ORDINARY and len(lengths) % 2:
            total = -total
        label = "F" if role == ORDINARY else "H"
        return t_coeffs(total, q_max, f"{label}[{g}]_{tuple(lengths)}")


def eo_amplitude(curve: DiskCurve, role: str, g: int, n: int,
                 u_order: int | None = None, cache: AmplitudeCache | None = None) -> Amplitude:
    """The (g, n) amplitude of the requested role, 2g - 2 + n > 0."""
    if u_order is not None and u_order > curve.order:
        raise ValueError(f"curve was solved to u-order {curve.order}, "
                         f"below the requested {u_order}")
    if cache is None:
        cache = AmplitudeCache(curve)
    return cache.amplitude(role, g, n)


def _check_lengths(lengths) -> tuple:
    lengths = tuple(lengths)
    if not lengths or any((not isinstance(l, int)) or l < 1 for l in lengths):
        raise ValueError("boundary lengths must be positive integers")
    return lengths


def extract_ordinary(curve: DiskCurve, g: int, lengths, q_max: int,
                     cache: AmplitudeCache | None = None) -> list[Fraction]:
    """Row of boundary-length counts [t^Q] F_{lengths} for Q = 0..q_max."""
    lengths = _check_lengths(lengths)
    n = len(lengths)
    if g == 0 and n == 1:
        return _transforms.ordinary_disks(curve, lengths[0]).row(lengths, q_max)
    if g == 0 and n == 2:
        return _transforms.ordinary_cylinders(curve, max(lengths)).row(lengths, q_max)
    if cache is None:
        cache = AmplitudeCache(curve)
    return cache.boundary_row(ORDINARY, g, lengths, q_max)


def fullysimple_anomalies(row) -> list[tuple[int, Fraction]]:
    """Entries a fully simple table is not expected to contain."""
    return [(q, v) for q, v in enumerate(row) if v < 0 or v.denominator != 1]


def extract_fullysimple(curve: DiskCurve, g: int, lengths, q_max: int,
                        cache: AmplitudeCache | None = None) -> list[Fraction]:
    """Row of fully simple counts [t^Q] H_{lengths} for Q = 0..q_max.

    Entries are expected to be nonnegative integers; any deviation is
    reported through an IntegralityWarning, never dropped.
    """
    lengths = _check_lengths(lengths)
    n = len(lengths)
    if g == 0 and n == 1:
        disks = _transforms.ordinary_disks(curve, lengths[0])
        row = _transforms.fully_simple_disks(disks).row(lengths, q_max)
    elif g == 0 and n == 2:
        k_max = max(lengths)
        disks = _transforms.ordinary_disks(curve, 2 * k_max)
        fsd = _transforms.fully_simple_disks(disks)
        cyl = _transforms.ordinary_cylinders(curve, k_max)
        simple = _transforms.simple_cylinders(cyl, fsd, k_max)
        row = _transforms.fully_simple_cylinders(simple, fsd, k_max).row(lengths, q_max)
    else:
        if cache is None:
            cache = AmplitudeCache(curve)
        row = cache.boundary_row(EXCHANGED, g, lengths, q_max)
    bad = fullysimple_anomalies(row)
    if bad:
        warnings.warn(f"fully simple table {tuple(lengths)} has unexpected "
                      f"entries {bad}", IntegralityWarning, stacklevel=2)
    return row


def pants_amplitude(curve: DiskCurve, role: str,
                    cache: AmplitudeCache | None = None) -> Amplitude:
    """The three-variable genus-zero amplitude straight from its residue
    formula: Res at the role's branch points of
    -B(z, z1) B(z, z2) B(z, z3) / (dx(z) dw(z))."""
    if role not in _ROLES:
        raise ValueError(f"unknown curve role {role!r}")
    if cache is None:
        cache = AmplitudeCache(curve)
    geom = cache.geometry(role, 10)
    xp = curve.x_zpoly.derivative()
    wp = curve.w_zpoly.derivative()
    cap = pole_cap(0, 3)
    terms: dict[tuple, USeries] = {}
    for br in geom.branches:
        work = cap + 6
        f = -(xp.taylor_at(br.center, work) * wp.taylor_at(br.center, work)).inverse()
        for m1 in range(cap - 1):
            for m2 in range(cap - 1):
                for m3 in range(cap - 1):
                    e = -1 - m1 - m2 - m3
                    if e < f.val:
                        continue
                    c = f.coeff(e).scale(Fraction((m1 + 1) * (m2 + 1) * (m3 + 1)))
                    if not c.is_zero():
                        key = ((br.index, m1 + 2), (br.index, m2 + 2), (br.index, m3 + 2))
                        cur = terms.get(key)
                        terms[key] = c if cur is None else cur + c
    terms = {k: v for k, v in terms.items() if not v.is_zero()}
    return Amplitude(0, 3, role, terms, geom.centers)
