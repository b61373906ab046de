"""Closed intervals of doubles with outward rounding."""

from __future__ import annotations

import math
import re
from fractions import Fraction

from . import rounding as R


class DomainViolation(ArithmeticError):
    """An operation was applied outside its domain (e.g. division by [-1, 1])."""


def _exact_float(x):
    """Return (lo, hi) doubles enclosing the int, float or Fraction ``x``."""
    if isinstance(x, float):
        if math.isnan(x):
            raise DomainViolation("NaN is not an interval endpoint")
        return x, x
    if isinstance(x, bool):
        x = int(x)
    if isinstance(x, int):
        f = float(x)
        if f == x:
            return f, f
        x = Fraction(x)
    if isinstance(x, Fraction):
        return fraction_down(x), fraction_up(x)
    raise TypeError(f"cannot convert {type(x).__name__} to an interval")


def fraction_down(q: Fraction) -> float:
    f = float(q)
    if Fraction(f) > q:
        f = R.down(f)
    return f


def fraction_up(q: Fraction) -> float:
    f = float(q)
    if Fraction(f) < q:
        f = R.up(f)
    return f


class Interval:
    """The set of reals ``lo <= x <= hi``.

    Arithmetic always returns an interval that contains every exact result
    obtainable from members of the operands.
    """

    __slots__ = ("lo", "hi")

    def __init__(self, lo, hi=None):
        if hi is None:
            hi = lo
        if isinstance(lo, float) and isinstance(hi, float):
            if not lo <= hi:
                raise ValueError(f"invalid interval [{lo!r}, {hi!r}]")
            if math.isinf(lo) or math.isinf(hi):
                raise R.RoundingOverflow("interval endpoints must be finite")
            self.lo = lo
            self.hi = hi
            return
        a = _exact_float(lo)[0]
        b = _exact_float(hi)[1]
        if not a <= b:
            raise ValueError(f"invalid interval [{lo!r}, {hi!r}]")
        self.lo = a
        self.hi = b

    # construction helpers

    @classmethod
    def point(cls, x) -> "Interval":
        lo, hi = _exact_float(x)
        return cls(lo, hi)

    @classmethod
    def from_decimal(cls, text: str) -> "Interval":
        """Tightest enclosure of the decimal number written in ``text``."""
        q = Fraction(text.strip())
        return cls(fraction_down(q), fraction_up(q))

    @classmethod
    def hull_of(cls, *xs) -> "Interval":
        ivs = [as_interval(x) for x in xs]
        return cls(min(i.lo for i in ivs), max(i.hi for i in ivs))

    # predicates and accessors

    @property
    def width(self) -> float:
        return R.sub_up(self.hi, self.lo)

    @property
    def mid(self) -> float:
        m = self.lo + (self.hi - self.lo) / 2.0
        return min(max(m, self.lo), self.hi)

    @property
    def rad(self) -> float:
        return R.sub_up(self.hi, self.lo) / 2.0

    @property
    def mag(self) -> float:
        return max(abs(self.lo), abs(self.hi))

    def is_point(self) -> bool:
        return self.lo == self.hi

    def contains(self, x) -> bool:
        if isinstance(x, Interval):
            return self.lo <= x.lo and x.hi <= self.hi
        if isinstance(x, Fraction):
            return Fraction(self.lo) <= x <= Fraction(self.hi)
        return self.lo <= x <= self.hi

    __contains__ = contains

    def straddles(self, x: float = 0.0) -> bool:
        return self.lo <= x <= self.hi and self.lo < self.hi

    def hull(self, other) -> "Interval":
        o = as_interval(other)
        return Interval(min(self.lo, o.lo), max(self.hi, o.hi))

    def intersect(self, other) -> "Interval | None":
        o = as_interval(other)
        lo, hi = max(self.lo, o.lo), min(self.hi, o.hi)
        return Interval(lo, hi) if lo <= hi else None

    def split(self) -> tuple["Interval", "Interval"]:
        m = self.mid
        return Interval(self.lo, m), Interval(m, self.hi)

    # arithmetic

    def __neg__(self):
        return Interval(-self.hi, -self.lo)

    def __pos__(self):
        return self

    def __add__(self, other):
        o = _operand(other)
        if o is None:
            return NotImplemented
        return Interval(R.add_down(self.lo, o.lo), R.add_up(self.hi, o.hi))

    __radd__ = __add__

    def __sub__(self, other):
        o = _operand(other)
        if o is None:
            return NotImplemented
        return Interval(R.sub_down(self.lo, o.hi), R.sub_up(self.hi, o.lo))

    def __rsub__(self, other):
        o = _operand(other)
        return NotImplemented if o is None else o - self

    def __mul__(self, other):
        o = _operand(other)
        if o is None:
            return NotImplemented
        a, b, c, d = self.lo, self.hi, o.lo, o.hi
        if a >= 0.0:
            if c >= 0.0:
                return Interval(R.mul_down(a, c), R.mul_up(b, d))
            if d <= 0.0:
                return Interval(R.mul_down(b, c), R.mul_up(a, d))
            return Interval(R.mul_down(b, c), R.mul_up(b, d))
        if b <= 0.0:
            if c >= 0.0:
                return Interval(R.mul_down(a, d), R.mul_up(b, c))
            if d <= 0.0:
                return Interval(R.mul_down(b, d), R.mul_up(a, c))
            return Interval(R.mul_down(a, d), R.mul_up(a, c))
        if c >= 0.0:
            return Interval(R.mul_down(a, d), R.mul_up(b, d))
        if d <= 0.0:
            return Interval(R.mul_down(b, c), R.mul_up(a, c))
        lo = min(R.mul_down(a, d), R.mul_down(b, c))
        hi = max(R.mul_up(a, c), R.mul_up(b, d))
        return Interval(lo, hi)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _operand(other)
        if o is None:
            return NotImplemented
        if o.lo <= 0.0 <= o.hi:
            raise DomainViolation(f"division by {o}")
        return self * o.recip()

    def __rtruediv__(self, other):
        o = _operand(other)
        return NotImplemented if o is None else o / self

    def recip(self) -> "Interval":
        if self.lo <= 0.0 <= self.hi:
            raise DomainViolation(f"reciprocal of {self}")
        return Interval(R.div_down(1.0, self.hi), R.div_up(1.0, self.lo))

    def sqr(self) -> "Interval":
        """Square without the dependency loss of ``x * x``."""
        a, b = self.lo, self.hi
        if a >= 0.0:
            return Interval(R.mul_down(a, a), R.mul_up(b, b))
        if b <= 0.0:
            return Interval(R.mul_down(b, b), R.mul_up(a, a))
        m = max(-a, b)
        return Interval(0.0, R.mul_up(m, m))

    def sqrt(self) -> "Interval":
        if self.lo < 0.0:
            raise DomainViolation(f"sqrt of {self}")
        return Interval(R.sqrt_down(self.lo), R.sqrt_up(self.hi))

    def atan(self) -> "Interval":
        from .atan import atan_down, atan_up

        return Interval(atan_down(self.lo), atan_up(self.hi))

    def pos_part(self) -> "Interval":
        return Interval(max(self.lo, 0.0), max(self.hi, 0.0))

    def neg_part(self) -> "Interval":
        return Interval(min(self.lo, 0.0), min(self.hi, 0.0))

    def clamp_nonneg(self) -> "Interval":
        """Intersect with [0, inf); for quantities known to be nonnegative."""
        if self.hi < 0.0:
            raise DomainViolation(f"{self} has no nonnegative part")
        return Interval(max(self.lo, 0.0), self.hi)

    def __abs__(self):
        if self.lo >= 0.0:
            return self
        if self.hi <= 0.0:
            return -self
        return Interval(0.0, max(-self.lo, self.hi))

    # comparisons are three-valued; these helpers return True only when certain

    def certainly_lt(self, other) -> bool:
        return self.hi < as_interval(other).lo

    def certainly_gt(self, other) -> bool:
        return self.lo > as_interval(other).hi

    def certainly_le(self, other) -> bool:
        return self.hi <= as_interval(other).lo

    def certainly_ge(self, other) -> bool:
        return self.lo >= as_interval(other).hi

    def __eq__(self, other):
        if isinstance(other, Interval):
            return self.lo == other.lo and self.hi == other.hi
        return NotImplemented

    def __hash__(self):
        return hash((self.lo, self.hi))

    def __repr__(self):
        return f"Interval({self.lo!r}, {self.hi!r})"

    def __str__(self):
        return format_interval(self)


def _operand(x):
    # None lets Python try the other operand (for instance a Taylor jet)
    if isinstance(x, Interval):
        return x
    try:
        return Interval.point(x)
    except TypeError:
        return None


def as_interval(x) -> Interval:
    if isinstance(x, Interval):
        return x
    return Interval.point(x)


def isqrt_nonneg(x: Interval) -> Interval:
    """sqrt of ``x`` after clamping to the nonnegative half line."""
    return x.clamp_nonneg().sqrt()


def format_interval(x: Interval) -> str:
    return f"[{x.lo!r}, {x.hi!r}]"


_IV_RE = re.compile(r"^\s*\[\s*([^,\]]+?)\s*,\s*([^,\]]+?)\s*\]\s*$")


def parse_interval(text: str) -> Interval:
    """Parse ``[lo, hi]``; decimal endpoints are rounded outward exactly."""
    m = _IV_RE.match(text)
    if not m:
        raise ValueError(f"not an interval: {text!r}")
    lo = fraction_down(Fraction(m.group(1)))
    hi = fraction_up(Fraction(m.group(2)))
    return Interval(lo, hi)
