"""Rigorous arctangent bounds for doubles.

atan(x) for 0 <= x <= 1 is reduced against the nearest table point c = k/16,
atan(x) = atan(c) + atan((x - c) / (1 + x c)), and the small remainder is summed
as a truncated alternating series with its truncation error added on both sides.
The table values are computed once from an exact rational series.
"""

from fractions import Fraction

from . import rounding as R
from .interval import Interval, fraction_down, fraction_up

_N_TERMS = 6
_TABLE_STEPS = 16

PI_LO = 3.141592653589793
PI_HI = R.up(PI_LO)


def _atan_fraction_bounds(x: Fraction, eps=Fraction(1, 2**70)):
    """Exact rational lower/upper bounds of atan(x) for 0 <= x <= 1.

    Euler's series  atan x = sum 2^(2n) (n!)^2 / (2n+1)! * x^(2n+1) / (1+x^2)^(n+1)
    has positive terms whose ratio never exceeds x^2 / (1 + x^2) <= 1/2.
    """
    if x == 0:
        return Fraction(0), Fraction(0)
    y = x * x / (1 + x * x)
    term = x / (1 + x * x)
    total = Fraction(0)
    n = 0
    while True:
        total += term
        n += 1
        term = term * y * Fraction(2 * n, 2 * n + 1)
        tail = term / (1 - y)
        if tail < eps:
            return total, total + tail


def _build_table():
    lo, hi = [], []
    for k in range(_TABLE_STEPS + 1):
        a, b = _atan_fraction_bounds(Fraction(k, _TABLE_STEPS))
        lo.append(fraction_down(a))
        hi.append(fraction_up(b))
    return lo, hi


_TABLE_LO, _TABLE_HI = _build_table()


def pi_interval() -> Interval:
    return Interval(PI_LO, PI_HI)


def _series(d: Interval) -> Interval:
    """Enclosure of atan over the small interval ``d`` (|d| <= 1/16)."""
    d2 = d.sqr()
    acc = Interval.point(0.0)
    for k in reversed(range(_N_TERMS)):
        coef = Interval(R.div_down(1.0, 2 * k + 1), R.div_up(1.0, 2 * k + 1))
        if k % 2:
            coef = -coef
        acc = acc * d2 + coef
    acc = acc * d
    m = d.mag
    p = 2 * _N_TERMS + 1
    rem = m
    for _ in range(p - 1):
        rem = R.mul_up(rem, m)
    rem = R.div_up(rem, float(p))
    return acc + Interval(-rem, rem)


def _atan_unit(x: float) -> Interval:
    """Enclosure of atan(x) for 0 <= x <= 1."""
    k = int(round(x * _TABLE_STEPS))
    c = k / _TABLE_STEPS
    num = Interval.point(x) - c
    den = Interval.point(x) * c + 1.0
    d = num / den
    table = Interval(_TABLE_LO[k], _TABLE_HI[k])
    r = table + _series(d)
    return Interval(max(r.lo, 0.0), r.hi)


def _atan_nonneg(x: float) -> Interval:
    if x == 0.0:
        return Interval(0.0, 0.0)
    if x < 1e-100:
        # x - x^3/3 < atan(x) < x and x^3 is far below half an ulp of x
        return Interval(R.down(x), x)
    if x <= 1.0:
        return _atan_unit(x)
    inv = Interval.point(1.0) / Interval.point(x)
    lo = _atan_unit(inv.lo).lo if inv.lo > 0.0 else 0.0
    hi = _atan_unit(min(inv.hi, 1.0)).hi
    half_pi = Interval(PI_LO / 2.0, PI_HI / 2.0)
    return half_pi - Interval(lo, hi)


def atan_enclosure(x: float) -> Interval:
    if x < 0.0:
        return -_atan_nonneg(-x)
    return _atan_nonneg(x)


def atan_down(x: float) -> float:
    return atan_enclosure(x).lo


def atan_up(x: float) -> float:
    return atan_enclosure(x).hi


def atan_ratio(num: Interval, den: Interval) -> Interval:
    """Enclosure of atan(num / den) for den >= 0, with den -> 0 allowed.

    For den == 0 the value is the limit +-pi/2 from the sign of num.
    """
    if den.lo < 0.0:
        raise ValueError("atan_ratio requires a nonnegative denominator")
    if den.lo > 0.0:
        return (num / den).atan()
    half_pi = Interval(PI_LO / 2.0, PI_HI / 2.0)
    # den touches 0: the angle of (den, num) lies between the angle at den.hi and +-pi/2
    if num.lo > 0.0:
        lo = (Interval.point(num.lo) / den.hi).atan().lo if den.hi > 0.0 else half_pi.lo
        return Interval(lo, half_pi.hi)
    if num.hi < 0.0:
        hi = (Interval.point(num.hi) / den.hi).atan().hi if den.hi > 0.0 else -half_pi.lo
        return Interval(-half_pi.hi, hi)
    return Interval(-half_pi.hi, half_pi.hi)
