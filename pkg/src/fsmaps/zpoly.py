"""Laurent polynomials and rational functions in z over the u-series ring,
local (Taylor/Laurent) expansions, residues, and series reversion.

Two knowledge horizons coexist: every coefficient is a USeries with its own
u-order, while LocalSeries additionally tracks how many powers of the local
variable are known.  The two are independent and both propagate by min-order
rules through arithmetic.
"""
from __future__ import annotations

from fractions import Fraction

from .ring import ONE, ZERO, Q3
from .series import USeries

# u-order tag for coefficients that vanish identically (not just to some
# finite truncation); min() never selects it
EXACT = 10**9

INFINITY = object()  # residue location sentinel


def _uzero():
    return USeries.zero(EXACT)


def _coerce_useries(c) -> USeries:
    if isinstance(c, USeries):
        return c
    return USeries.const(c, EXACT)


class LocalSeries:
    """Truncated Laurent series in a local variable, USeries coefficients."""

    __slots__ = ("offset", "coeffs", "horizon")

    def __init__(self, offset: int, coeffs, horizon: int):
        coeffs = [_coerce_useries(c) for c in coeffs]
        i = 0
        while i < len(coeffs) and coeffs[i].is_zero():
            i += 1
        if i:
            offset += i
            coeffs = coeffs[i:]
        if offset + len(coeffs) > horizon:
            keep = horizon - offset
            del coeffs[keep if keep > 0 else 0:]
        if not coeffs:
            offset = horizon
        self.offset = offset
        self.coeffs = coeffs
        self.horizon = horizon

    @staticmethod
    def zero(horizon: int) -> LocalSeries:
        return LocalSeries(horizon, (), horizon)

    @staticmethod
    def const(c, horizon: int) -> LocalSeries:
        return LocalSeries(0, (c,), horizon)

    @staticmethod
    def var(horizon: int) -> LocalSeries:
        return LocalSeries(1, (USeries.const(1, EXACT),), horizon)

    @property
    def val(self) -> int:
        return self.offset

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, m: int) -> USeries:
        if m >= self.horizon:
            raise ValueError(f"local coefficient {m} beyond horizon {self.horizon}")
        if m < self.offset or m - self.offset >= len(self.coeffs):
            return _uzero()
        return self.coeffs[m - self.offset]

    def __repr__(self):
        return f"LocalSeries(offset={self.offset}, len={len(self.coeffs)}, horizon={self.horizon})"

    def __neg__(self):
        return LocalSeries(self.offset, [-c for c in self.coeffs], self.horizon)

    def __add__(self, other):
        if not isinstance(other, LocalSeries):
            other = LocalSeries.const(other, self.horizon)
        horizon = min(self.horizon, other.horizon)
        lo = min(self.offset, other.offset, horizon)
        out = [_uzero() for _ in range(horizon - lo)]
        for src in (self, other):
            for i, c in enumerate(src.coeffs):
                e = src.offset + i
                if e < horizon:
                    out[e - lo] = out[e - lo] + c
        return LocalSeries(lo, out, horizon)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, LocalSeries):
            other = LocalSeries.const(other, self.horizon)
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, LocalSeries):
            return self.scale(other)
        horizon = min(self.horizon + other.val, other.horizon + self.val)
        if self.is_zero() or other.is_zero():
            return LocalSeries.zero(horizon)
        lo = self.offset + other.offset
        out = [_uzero() for _ in range(horizon - lo)]
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            ea = self.offset + i
            top = horizon - ea - other.offset
            for j in range(min(len(other.coeffs), top)):
                b = other.coeffs[j]
                if not b.is_zero():
                    k = ea + other.offset + j - lo
                    out[k] = out[k] + a * b
        return LocalSeries(lo, out, horizon)

    __rmul__ = __mul__

    def scale(self, c) -> LocalSeries:
        c = _coerce_useries(c)
        if c.is_zero():
            return LocalSeries.zero(self.horizon)
        return LocalSeries(self.offset, [a * c for a in self.coeffs], self.horizon)

    def shift(self, k: int) -> LocalSeries:
        return LocalSeries(self.offset + k, self.coeffs, self.horizon + k)

    def truncate(self, horizon: int) -> LocalSeries:
        return LocalSeries(self.offset, self.coeffs, min(self.horizon, horizon))

    def inverse(self) -> LocalSeries:
        if self.is_zero():
            raise ZeroDivisionError("inverse of locally-zero series")
        v = self.offset
        n = self.horizon - v
        lead = self.coeffs[0].inverse()
        inv = [lead]
        for k in range(1, n):
            acc = None
            for i in range(1, min(k, len(self.coeffs) - 1) + 1):
                c = self.coeffs[i]
                if not c.is_zero():
                    term = c * inv[k - i]
                    acc = term if acc is None else acc + term
            inv.append(USeries.zero(EXACT) if acc is None else -(lead * acc))
        return LocalSeries(-v, inv, self.horizon - 2 * v)

    def __truediv__(self, other):
        if not isinstance(other, LocalSeries):
            return self.scale(_coerce_useries(other).inverse())
        return self * other.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = LocalSeries.const(USeries.const(1, EXACT), self.horizon)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def derivative(self) -> LocalSeries:
        out = []
        for i, c in enumerate(self.coeffs):
            e = self.offset + i
            out.append(c.scale(e))
        return LocalSeries(self.offset - 1, out, self.horizon - 1)

    def sqrt(self) -> LocalSeries:
        """Principal branch; local valuation must be even."""
        if self.is_zero():
            return LocalSeries.zero(self.horizon)
        v = self.offset
        if v % 2:
            raise ValueError("local square root of odd valuation")
        lead = self.coeffs[0].sqrt()
        n = self.horizon - v
        half = lead.scale(2).inverse()
        out = [lead]
        for k in range(1, n):
            acc = self.coeff(v + k)
            for i in range(1, k):
                acc = acc - out[i] * out[k - i]
            out.append(acc * half)
        return LocalSeries(v // 2, out, self.horizon - v // 2)

    def compose(self, g: LocalSeries) -> LocalSeries:
        """Substitute g (positive local valuation) for the variable."""
        if not self.is_zero() and g.val < 1 and not g.is_zero():
            raise ValueError("composition needs positive valuation")
        if self.is_zero():
            return LocalSeries.zero(min(self.horizon, g.horizon))
        ginv = None
        power_cache: dict[int, LocalSeries] = {0: LocalSeries.const(USeries.const(1, EXACT), g.horizon)}

        def gpow(e: int) -> LocalSeries:
            nonlocal ginv
            if e in power_cache:
                return power_cache[e]
            if e > 0:
                power_cache[e] = gpow(e - 1) * g
            else:
                if ginv is None:
                    ginv = g.inverse()
                power_cache[e] = gpow(e + 1) * ginv
            return power_cache[e]

        acc = None
        for i, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            term = gpow(self.offset + i).scale(c)
            acc = term if acc is None else acc + term
        return acc if acc is not None else LocalSeries.zero(min(self.horizon, g.horizon))


class ZPoly:
    """Laurent polynomial in z with USeries coefficients."""

    __slots__ = ("offset", "coeffs")

    def __init__(self, offset: int, coeffs):
        coeffs = [_coerce_useries(c) for c in coeffs]
        i = 0
        while i < len(coeffs) and coeffs[i].is_zero():
            i += 1
        if i:
            offset += i
            coeffs = coeffs[i:]
        while coeffs and coeffs[-1].is_zero():
            coeffs.pop()
        if not coeffs:
            offset = 0
        self.offset = offset
        self.coeffs = coeffs

    @staticmethod
    def zero() -> ZPoly:
        return ZPoly(0, ())

    @staticmethod
    def const(c) -> ZPoly:
        return ZPoly(0, (c,))

    @staticmethod
    def z(exp: int = 1, coeff=1) -> ZPoly:
        return ZPoly(exp, (coeff,))

    @staticmethod
    def from_dict(d: dict) -> ZPoly:
        if not d:
            return ZPoly.zero()
        lo = min(d)
        hi = max(d)
        coeffs = [d.get(e, _uzero()) for e in range(lo, hi + 1)]
        return ZPoly(lo, coeffs)

    @property
    def lo(self) -> int:
        return self.offset

    @property
    def hi(self) -> int:
        return self.offset + len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, e: int) -> USeries:
        if e < self.offset or e - self.offset >= len(self.coeffs):
            return _uzero()
        return self.coeffs[e - self.offset]

    def __repr__(self):
        return f"ZPoly(lo={self.offset}, hi={self.hi}, {len(self.coeffs)} coeffs)"

    def __neg__(self):
        return ZPoly(self.offset, [-c for c in self.coeffs])

    def __add__(self, other):
        if not isinstance(other, ZPoly):
            other = ZPoly.const(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        lo = min(self.offset, other.offset)
        hi = max(self.hi, other.hi)
        out = [_uzero() for _ in range(hi - lo + 1)]
        for src in (self, other):
            for i, c in enumerate(src.coeffs):
                out[src.offset + i - lo] = out[src.offset + i - lo] + c
        return ZPoly(lo, out)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, ZPoly):
            other = ZPoly.const(other)
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, ZPoly):
            return self.scale(other)
        if self.is_zero() or other.is_zero():
            return ZPoly.zero()
        lo = self.offset + other.offset
        out = [_uzero() for _ in range(len(self.coeffs) + len(other.coeffs) - 1)]
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return ZPoly(lo, out)

    __rmul__ = __mul__

    def scale(self, c) -> ZPoly:
        c = _coerce_useries(c)
        if c.is_zero():
            return ZPoly.zero()
        return ZPoly(self.offset, [a * c for a in self.coeffs])

    def shift(self, k: int) -> ZPoly:
        return ZPoly(self.offset + k, self.coeffs)

    def derivative(self) -> ZPoly:
        return ZPoly(self.offset - 1, [c.scale(self.offset + i) for i, c in enumerate(self.coeffs)])

    def subs_recip(self) -> ZPoly:
        """z -> 1/z."""
        return ZPoly(-self.hi, list(reversed(self.coeffs)))

    def eval_at(self, p: USeries) -> USeries:
        if self.is_zero():
            return _uzero()
        acc = None
        pinv = None
        ppow: dict[int, USeries] = {}

        def power(e: int) -> USeries:
            nonlocal pinv
            if e in ppow:
                return ppow[e]
            if e == 0:
                r = USeries.const(1, EXACT)
            elif e > 0:
                r = power(e - 1) * p
            else:
                if pinv is None:
                    pinv = p.inverse()
                r = power(e + 1) * pinv
            ppow[e] = r
            return r

        for i, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            term = c * power(self.offset + i)
            acc = term if acc is None else acc + term
        return acc if acc is not None else _uzero()

    def taylor_at(self, p, horizon: int) -> LocalSeries:
        """Expand P(p + zeta) as a LocalSeries in zeta."""
        p = _coerce_useries(p)
        shift = LocalSeries(0, (p, USeries.const(1, EXACT)), horizon)
        # nonnegative part by Horner
        pos = LocalSeries.zero(horizon)
        for e in range(self.hi, -1, -1):
            pos = pos * shift + LocalSeries.const(self.coeff(e), horizon)
        if self.offset >= 0:
            return pos
        ginv = shift.inverse()
        neg = LocalSeries.zero(horizon)
        for m in range(-self.offset, 0, -1):
            neg = (neg + LocalSeries.const(self.coeff(-m), horizon)) * ginv
        return pos + neg

    def expand_at_infinity(self, horizon: int) -> LocalSeries:
        """Expand in v = 1/z: z^e becomes v^{-e}."""
        return LocalSeries(-self.hi, list(reversed(self.coeffs)), horizon)

    def agrees_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def agrees_with(self, other: ZPoly) -> bool:
        lo = min(self.offset, other.offset) if (self.coeffs or other.coeffs) else 0
        hi = max(self.hi, other.hi) if (self.coeffs or other.coeffs) else -1
        for e in range(lo, hi + 1):
            if not self.coeff(e).agrees_with(other.coeff(e)):
                return False
        return True


class RationalForm:
    """Quotient of Laurent polynomials in z."""

    __slots__ = ("num", "den")

    def __init__(self, num: ZPoly, den: ZPoly):
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        self.num = num
        self.den = den

    @staticmethod
    def from_zpoly(p: ZPoly) -> RationalForm:
        return RationalForm(p, ZPoly.const(1))

    def __repr__(self):
        return f"RationalForm({self.num!r} / {self.den!r})"

    def __neg__(self):
        return RationalForm(-self.num, self.den)

    def __add__(self, other):
        if not isinstance(other, RationalForm):
            other = RationalForm.from_zpoly(other if isinstance(other, ZPoly) else ZPoly.const(other))
        return RationalForm(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, RationalForm):
            other = RationalForm.from_zpoly(other if isinstance(other, ZPoly) else ZPoly.const(other))
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, RationalForm):
            if isinstance(other, ZPoly):
                return RationalForm(self.num * other, self.den)
            return RationalForm(self.num.scale(other), self.den)
        return RationalForm(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, RationalForm):
            if isinstance(other, ZPoly):
                return RationalForm(self.num, self.den * other)
            return RationalForm(self.num, self.den.scale(other))
        return RationalForm(self.num * other.den, self.den * other.num)

    def derivative(self) -> RationalForm:
        return RationalForm(
            self.num.derivative() * self.den - self.num * self.den.derivative(),
            self.den * self.den,
        )

    def eval_at(self, p: USeries) -> USeries:
        return self.num.eval_at(p) * self.den.eval_at(p).inverse()

    def equals(self, other: RationalForm) -> bool:
        """Cross-multiplied identity on the known u-range."""
        return (self.num * other.den).agrees_with(other.num * self.den)

    def taylor_at(self, p, horizon: int, pole_bound: int = 12) -> LocalSeries:
        work = horizon + 2 * pole_bound + 2
        nl = self.num.taylor_at(p, work)
        dl = self.den.taylor_at(p, work)
        if dl.is_zero() or dl.val > pole_bound:
            raise ValueError(f"pole order at the point exceeds bound {pole_bound}")
        return (nl * dl.inverse()).truncate(horizon)

    def expand_at_infinity(self, horizon: int) -> LocalSeries:
        work = horizon + 2 * (len(self.num.coeffs) + len(self.den.coeffs) + 2)
        nl = self.num.expand_at_infinity(work)
        dl = self.den.expand_at_infinity(work)
        return (nl * dl.inverse()).truncate(horizon)


def z_residue(f: RationalForm, point, multiplier: ZPoly | None = None, pole_bound: int = 12) -> USeries:
    """Exact residue of multiplier * f dz at a finite point or at infinity.

    Sign convention at infinity: Res dz/z = -1.
    """
    if multiplier is not None and not multiplier.is_zero():
        f = f * multiplier
    if point is INFINITY:
        g = f.expand_at_infinity(4)
        # z = 1/v, dz = -dv/v^2: residue is -[v^1] f(1/v)
        return -g.coeff(1)
    loc = f.taylor_at(point, 2, pole_bound)
    return loc.coeff(-1)


def series_reversion(fs: list[USeries]) -> list[USeries]:
    """Functional inversion of resolvent-type data.

    Input [F_0, F_1, ...] stands for W(x) = sum F_l x^{-l-1}; the output
    [H_0, H_1, ...] of the same length stands for the inverse function
    X(w) = sum H_k w^{k-1}, with X(W(x)) = x to the length cutoff.
    """
    if not fs:
        raise ValueError("empty coefficient list")
    if fs[0].is_zero():
        raise ValueError("leading coefficient must be invertible")
    n = len(fs)
    horizon = n + 1
    # what(s) = s * sum F_l s^l  (s = 1/x), a power series with what(0) = 0
    what = LocalSeries(1, fs, horizon)
    # Lagrange inversion for the compositional inverse shat(w)
    ratio = LocalSeries(0, fs, horizon).inverse()  # (s / what(s)) as series in s
    b = [None] * horizon  # b[m] coefficient of w^m in shat
    upow = LocalSeries.const(USeries.const(1, EXACT), horizon)
    for m in range(1, horizon):
        upow = upow * ratio
        b[m] = upow.coeff(m - 1).scale(Fraction(1, m))
    shat = LocalSeries(1, b[1:], horizon)
    # X(w) = 1/shat(w) = (1/w) * (w/shat); H_k = [w^k](w/shat)
    rinv = LocalSeries(0, b[1:], horizon).inverse()
    out = [rinv.coeff(k) for k in range(n)]
    # sanity: the composition must return the identity to the cutoff
    check = what.compose(shat)
    for m in range(2, min(horizon, check.horizon)):
        c = check.coeff(m)
        if not c.is_zero():
            raise ValueError(f"reversion cutoff starvation at order {m}")
    return out
