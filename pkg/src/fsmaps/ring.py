"""Exact arithmetic in the quadratic field Q(sqrt 3).

Every number is rat + surd*sqrt(3) with both components Fraction.  This is
the smallest field containing all coefficients that show up in the curve
data and in the odd-length boundary counts; final map counts must come out
with surd == 0, which callers check rather than assume.
"""
from __future__ import annotations

import math
from fractions import Fraction


def _frac_sqrt(q: Fraction) -> Fraction | None:
    """Exact square root of a nonnegative rational, or None."""
    if q < 0:
        return None
    np, dp = q.numerator, q.denominator
    rn, rd = math.isqrt(np), math.isqrt(dp)
    if rn * rn == np and rd * rd == dp:
        return Fraction(rn, rd)
    return None


class Q3:
    __slots__ = ("rat", "surd")

    def __init__(self, rat, surd=0):
        self.rat = rat if isinstance(rat, Fraction) else Fraction(rat)
        self.surd = surd if isinstance(surd, Fraction) else Fraction(surd)

    def __repr__(self):
        return f"Q3({self.rat!r}, {self.surd!r})"

    def __str__(self):
        if not self.surd:
            return str(self.rat)
        return f"{self.rat} + {self.surd}*sqrt3"

    def __hash__(self):
        return hash((self.rat, self.surd))

    def __eq__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self.rat == other.rat and self.surd == other.surd

    def __bool__(self):
        return bool(self.rat) or bool(self.surd)

    def __neg__(self):
        return Q3(-self.rat, -self.surd)

    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return Q3(self.rat + other.rat, self.surd + other.surd)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return Q3(self.rat - other.rat, self.surd - other.surd)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return Q3(other.rat - self.rat, other.surd - self.surd)

    def __mul__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if not self.surd and not other.surd:
            return Q3(self.rat * other.rat)
        return Q3(
            self.rat * other.rat + 3 * self.surd * other.surd,
            self.rat * other.surd + self.surd * other.rat,
        )

    __rmul__ = __mul__

    def inverse(self) -> Q3:
        if not self:
            raise ZeroDivisionError("inverse of zero in Q(sqrt3)")
        if not self.surd:
            return Q3(1 / self.rat)
        # conjugate trick; the norm rat^2 - 3 surd^2 never vanishes for
        # nonzero elements since sqrt 3 is irrational
        norm = self.rat * self.rat - 3 * self.surd * self.surd
        return Q3(self.rat / norm, -self.surd / norm)

    def __truediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    @property
    def is_rational(self) -> bool:
        return not self.surd

    def sqrt(self) -> Q3:
        """Principal square root when it exists in Q(sqrt3); error otherwise."""
        if not self:
            return ZERO
        if not self.surd:
            r = _frac_sqrt(self.rat)
            if r is not None:
                return Q3(r)
            r = _frac_sqrt(self.rat / 3)
            if r is not None:
                return Q3(0, r)
            raise ValueError(f"{self} has no square root in Q(sqrt3)")
        # solve (x + y sqrt3)^2 = rat + surd sqrt3:
        # x^2 + 3 y^2 = rat, 2 x y = surd  =>  x^2 is a root of
        # X^2 - rat X + 3 (surd/2)^2 = 0
        disc = _frac_sqrt(self.rat * self.rat - 3 * self.surd * self.surd)
        if disc is not None:
            for x2 in ((self.rat + disc) / 2, (self.rat - disc) / 2):
                x = _frac_sqrt(x2)
                if x is not None and x != 0:
                    y = self.surd / (2 * x)
                    cand = Q3(x, y)
                    if cand * cand == self:
                        return cand if x > 0 or (x == 0 and y > 0) else -cand
        raise ValueError(f"{self} has no square root in Q(sqrt3)")

    def to_str(self) -> str:
        return str(self)

    @staticmethod
    def from_str(text: str) -> Q3:
        text = text.strip()
        if "sqrt3" in text:
            head, _, tail = text.partition(" + ")
            if not tail.endswith("*sqrt3"):
                raise ValueError(f"cannot parse {text!r}")
            return Q3(Fraction(head), Fraction(tail[: -len("*sqrt3")]))
        return Q3(Fraction(text))


def _coerce(value) -> Q3 | None:
    if isinstance(value, Q3):
        return value
    if isinstance(value, (int, Fraction)):
        return Q3(value)
    return None


ZERO = Q3(0)
ONE = Q3(1)
SQRT3 = Q3(0, 1)
