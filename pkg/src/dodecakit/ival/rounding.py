"""Directed rounding for binary64 arithmetic.

Every operation computes the round-to-nearest result and then decides, from an
error-free transformation, whether the exact value lies below or above it.  The
result is stepped one ulp outward only when the operation was inexact, so exact
operations (small integers, dyadic fractions) stay exact.

When an error-free transformation could overflow or lose bits to underflow, the
code falls back to unconditional stepping, which is always sound.
"""

import math

_INF = math.inf
_SPLITTER = 134217729.0  # 2**27 + 1
_BIG = 2.0 ** 995
_TINY = 2.0 ** -969


class RoundingOverflow(ArithmeticError):
    """A directed-rounded result is not a finite double."""


def _check(x):
    if math.isinf(x) or math.isnan(x):
        raise RoundingOverflow(f"non-finite intermediate {x!r}")
    return x


def down(x):
    return math.nextafter(x, -_INF)


def up(x):
    return math.nextafter(x, _INF)


def two_sum(a, b):
    s = a + b
    bb = s - a
    err = (a - (s - bb)) + (b - bb)
    return s, err


def _split(a):
    c = _SPLITTER * a
    hi = c - (c - a)
    return hi, a - hi


def two_prod(a, b):
    """Return (p, e) with p + e == a * b exactly, or None if out of safe range."""
    p = a * b
    if p == 0.0 or not (_TINY < abs(a) < _BIG and _TINY < abs(b) < _BIG):
        return None
    if not (_TINY < abs(p) < _BIG):
        return None
    ah, al = _split(a)
    bh, bl = _split(b)
    e = ((ah * bh - p) + ah * bl + al * bh) + al * bl
    return p, e


def add_down(a, b):
    s, e = two_sum(a, b)
    _check(s)
    return down(s) if e < 0.0 else s


def add_up(a, b):
    s, e = two_sum(a, b)
    _check(s)
    return up(s) if e > 0.0 else s


def sub_down(a, b):
    return add_down(a, -b)


def sub_up(a, b):
    return add_up(a, -b)


def mul_down(a, b):
    p = a * b
    _check(p)
    if p == 0.0:
        if a == 0.0 or b == 0.0:
            return 0.0
        return -5e-324 if (a < 0) != (b < 0) else 0.0
    pe = two_prod(a, b)
    if pe is None:
        return down(p)
    return down(p) if pe[1] < 0.0 else p


def mul_up(a, b):
    p = a * b
    _check(p)
    if p == 0.0:
        if a == 0.0 or b == 0.0:
            return 0.0
        return 0.0 if (a < 0) != (b < 0) else 5e-324
    pe = two_prod(a, b)
    if pe is None:
        return up(p)
    return up(p) if pe[1] > 0.0 else p


def _div_residual_sign(a, b, q):
    """Sign of a/b - q, or None when it cannot be decided exactly."""
    pe = two_prod(q, b)
    if pe is None:
        return None
    p, e = pe
    r = (a - p) - e
    if r == 0.0:
        return 0
    return 1 if (r > 0.0) == (b > 0.0) else -1


def div_down(a, b):
    q = a / b
    _check(q)
    if q == 0.0:
        if a == 0.0:
            return 0.0
        return -5e-324 if (a < 0) != (b < 0) else 0.0
    s = _div_residual_sign(a, b, q)
    if s is None:
        return down(q)
    return down(q) if s < 0 else q


def div_up(a, b):
    q = a / b
    _check(q)
    if q == 0.0:
        if a == 0.0:
            return 0.0
        return 0.0 if (a < 0) != (b < 0) else 5e-324
    s = _div_residual_sign(a, b, q)
    if s is None:
        return up(q)
    return up(q) if s > 0 else q


def _sqrt_residual_sign(x, s):
    pe = two_prod(s, s)
    if pe is None:
        return None
    p, e = pe
    r = (x - p) - e
    return 0 if r == 0.0 else (1 if r > 0.0 else -1)


def sqrt_down(x):
    if x == 0.0:
        return 0.0
    s = math.sqrt(x)
    sg = _sqrt_residual_sign(x, s)
    if sg is None:
        return max(0.0, down(s))
    return down(s) if sg < 0 else s


def sqrt_up(x):
    if x == 0.0:
        return 0.0
    s = math.sqrt(x)
    sg = _sqrt_residual_sign(x, s)
    if sg is None:
        return up(s)
    return up(s) if sg > 0 else s
