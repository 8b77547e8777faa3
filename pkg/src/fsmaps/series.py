"""Truncated series in u over Q(sqrt3), with the global convention t = u^2.

A USeries knows its coefficients for exponents offset .. order-1; everything
at order and beyond is unknown.  Arithmetic propagates the tightest honest
order (min-order rule with valuation shifts), so a result that prints q
t-coefficients really is exact to t^q.  Negative offsets are allowed: the
exchanged-curve recursion passes through intermediates with poles in u even
though every public count ends up a plain polynomial in t.
"""
from __future__ import annotations

from fractions import Fraction

from .ring import ONE, ZERO, Q3, _coerce


class USeries:
    __slots__ = ("offset", "coeffs", "order")

    def __init__(self, offset: int, coeffs, order: int):
        coeffs = list(coeffs)
        # canonical form: no leading or trailing stored zeros; a short list
        # means the remaining coefficients up to order are known to vanish
        i = 0
        while i < len(coeffs) and not coeffs[i]:
            i += 1
        if i:
            offset += i
            coeffs = coeffs[i:]
        if offset + len(coeffs) > order:
            del coeffs[order - offset:]
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        if not coeffs:
            offset = order
        self.offset = offset
        self.coeffs = coeffs
        self.order = order

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(order: int) -> USeries:
        return USeries(order, (), order)

    @staticmethod
    def const(value, order: int) -> USeries:
        return USeries(0, (value if isinstance(value, Q3) else Q3(value),), order)

    @staticmethod
    def monomial(value, exp: int, order: int) -> USeries:
        return USeries(exp, (value if isinstance(value, Q3) else Q3(value),), order)

    @staticmethod
    def u(order: int) -> USeries:
        return USeries.monomial(ONE, 1, order)

    @staticmethod
    def t(order: int) -> USeries:
        return USeries.monomial(ONE, 2, order)

    @staticmethod
    def from_t_coeffs(tcoeffs, order: int) -> USeries:
        coeffs = []
        for c in tcoeffs:
            coeffs.append(c if isinstance(c, Q3) else Q3(c))
            coeffs.append(ZERO)
        return USeries(0, coeffs, order)

    # -- inspection --------------------------------------------------------

    @property
    def val(self) -> int:
        """Valuation; equals order for a series that is zero as far as known."""
        return self.offset

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, exp: int) -> Q3:
        if exp >= self.order:
            raise ValueError(f"coefficient of u^{exp} beyond truncation order {self.order}")
        if exp < self.offset or exp - self.offset >= len(self.coeffs):
            return ZERO
        return self.coeffs[exp - self.offset]

    def __eq__(self, other):
        if not isinstance(other, USeries):
            return NotImplemented
        return (self.offset, self.order) == (other.offset, other.order) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.offset, self.order, tuple(self.coeffs)))

    def agrees_with(self, other: USeries) -> bool:
        """Coefficientwise agreement on the common known range."""
        horizon = min(self.order, other.order)
        lo = min(self.offset, other.offset, horizon)
        end_a = self.offset + len(self.coeffs) if self.coeffs else lo
        end_b = other.offset + len(other.coeffs) if other.coeffs else lo
        hi = min(horizon, max(end_a, end_b))
        for e in range(lo, hi):
            if self.coeff(e) != other.coeff(e):
                return False
        return True

    def __repr__(self):
        if self.is_zero():
            return f"USeries(0; O(u^{self.order}))"
        parts = [f"({c})u^{self.offset + i}" for i, c in enumerate(self.coeffs) if c]
        return "USeries(" + " + ".join(parts) + f"; O(u^{self.order}))"

    # -- arithmetic --------------------------------------------------------

    def __neg__(self):
        return USeries(self.offset, [-c for c in self.coeffs], self.order)

    def __add__(self, other):
        if not isinstance(other, USeries):
            q = _coerce(other)
            if q is None:
                return NotImplemented
            other = USeries.const(q, self.order)
        order = min(self.order, other.order)
        lo = min(self.offset, other.offset, order)
        end_a = self.offset + len(self.coeffs) if self.coeffs else lo
        end_b = other.offset + len(other.coeffs) if other.coeffs else lo
        hi = min(order, max(end_a, end_b))
        out = [ZERO] * max(hi - lo, 0)
        for i, c in enumerate(self.coeffs):
            e = self.offset + i
            if e < order:
                out[e - lo] = out[e - lo] + c
        for i, c in enumerate(other.coeffs):
            e = other.offset + i
            if e < order:
                out[e - lo] = out[e - lo] + c
        return USeries(lo, out, order)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, USeries):
            return self + (-other)
        q = _coerce(other)
        if q is None:
            return NotImplemented
        return self + USeries.const(-q, self.order)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, USeries):
            q = _coerce(other)
            if q is None:
                return NotImplemented
            return self.scale(q)
        order = min(self.order + other.val, other.order + self.val)
        if self.is_zero() or other.is_zero():
            return USeries.zero(order)
        lo = self.offset + other.offset
        hi = min(order, lo + len(self.coeffs) + len(other.coeffs) - 1)
        out = [ZERO] * max(hi - lo, 0)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            ea = self.offset + i
            top = order - ea - other.offset
            for j in range(min(len(other.coeffs), top)):
                b = other.coeffs[j]
                if b:
                    k = ea + other.offset + j - lo
                    out[k] = out[k] + a * b
        return USeries(lo, out, order)

    __rmul__ = __mul__

    def scale(self, q) -> USeries:
        q = q if isinstance(q, Q3) else Q3(q)
        if not q:
            return USeries.zero(self.order)
        return USeries(self.offset, [c * q for c in self.coeffs], self.order)

    def shift(self, k: int) -> USeries:
        """Multiply by u^k (exact, shifts the knowledge horizon too)."""
        return USeries(self.offset + k, self.coeffs, self.order + k)

    def inverse(self) -> USeries:
        if self.is_zero():
            raise ZeroDivisionError("division by the zero series")
        v = self.offset
        n = self.order - v  # relative coefficients known of self and result
        if n <= 0:
            raise ValueError("truncation order too small to invert")
        lead = self.coeffs[0].inverse()
        if len(self.coeffs) == 1:
            # exact monomial, exact inverse
            return USeries(-v, (lead,), self.order - 2 * v)
        if n > 10**6:
            raise ValueError("inversion of an exact non-monomial series")
        inv = [lead]
        for k in range(1, n):
            acc = ZERO
            for i in range(1, min(k, len(self.coeffs) - 1) + 1):
                c = self.coeffs[i]
                if c:
                    acc = acc + c * inv[k - i]
            inv.append(-lead * acc)
        return USeries(-v, inv, self.order - 2 * v)

    def __truediv__(self, other):
        if not isinstance(other, USeries):
            q = _coerce(other)
            if q is None:
                return NotImplemented
            return self.scale(q.inverse())
        return self * other.inverse()

    def __rtruediv__(self, other):
        q = _coerce(other)
        if q is None:
            return NotImplemented
        return self.inverse().scale(q)

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = USeries.const(ONE, self.order)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def sqrt(self) -> USeries:
        """Principal branch; valuation must be even and the lead a square."""
        if self.is_zero():
            return USeries.zero(self.order)
        v = self.offset
        if v % 2:
            raise ValueError("square root of odd valuation")
        lead = self.coeffs[0].sqrt()
        if len(self.coeffs) == 1:
            return USeries(v // 2, (lead,), self.order - v // 2)
        n = self.order - v
        if n > 10**6:
            raise ValueError("square root of an exact non-monomial series")
        half = (2 * lead).inverse()
        out = [lead]
        for k in range(1, n):
            acc = self.coeffs[k] if k < len(self.coeffs) else ZERO
            for i in range(1, k):
                acc = acc - out[i] * out[k - i]
            out.append(acc * half)
        return USeries(v // 2, out, self.order - v // 2)

    def truncate(self, order: int) -> USeries:
        return USeries(self.offset, self.coeffs, min(self.order, order))

    def with_order(self, order: int) -> USeries:
        """Re-truncate or (for exact data like monomials) extend the horizon."""
        return USeries(self.offset, self.coeffs, order)


# -- public wrappers with the documented error semantics -------------------

def series_arith(a: USeries, b: USeries, op: str) -> USeries:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if b.is_zero():
            raise ZeroDivisionError("division by the zero series")
        out = a / b
        if out.val < 0 and not out.is_zero():
            raise ValueError("valuation underflow: result needs negative u powers")
        return out
    raise ValueError(f"unknown op {op!r}")


def series_sqrt(a: USeries) -> USeries:
    return a.sqrt()


def assert_rational_in_t(s: USeries, what: str = "series") -> list[Fraction]:
    """Check surd-freeness, even-u purity and nonnegative valuation;
    return the t-coefficients as Fractions."""
    if s.val < 0 and not s.is_zero():
        raise AssertionError(f"{what}: negative u-valuation {s.val}")
    for i, c in enumerate(s.coeffs):
        e = s.offset + i
        if e >= s.order:
            break
        if e % 2:
            if c:
                raise AssertionError(f"{what}: odd coefficient at u^{e}: {c}")
        elif not c.is_rational:
            raise AssertionError(f"{what}: sqrt3 part at u^{e}: {c}")
    # dense t-prefix over the known range; an exact series lists only its
    # stored extent so that the sentinel order cannot inflate the output
    if s.order <= 10**5:
        known = s.order
    else:
        known = min(s.order, s.offset + len(s.coeffs)) if s.coeffs else 0
    return [s.coeff(2 * k).rat for k in range((known + 1) // 2)]


def t_coeffs(s: USeries, q_max: int, what: str = "series") -> list[Fraction]:
    if s.order < 2 * q_max + 1:
        raise ValueError(f"{what}: u-order {s.order} too small for t^{q_max}")
    assert_rational_in_t(s, what)
    return [s.coeff(2 * k).rat for k in range(q_max + 1)]
