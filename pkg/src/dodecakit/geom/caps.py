"""Caps, quoins and the volume/solid-angle conversion functions."""

from __future__ import annotations

from dataclasses import dataclass

from ..ival import DomainViolation, Interval
from . import scalar as S


class HOutOfRange(DomainViolation):
    pass


@dataclass(frozen=True)
class LambdaPair:
    lambda_v: float = 1.0
    lambda_s: float = 0.0


VOLUME = LambdaPair(1.0, 0.0)
SOLID = LambdaPair(0.0, 1.0)


def phi(h, t, lam: LambdaPair = VOLUME):
    return lam.lambda_v * t * h * (t + h) / 6 + lam.lambda_s


def a_fun(h, t, lam: LambdaPair = VOLUME):
    return (1 - h / t) * (phi(h, t, lam) - phi(t, t, lam))


def _check_h(h, t):
    if S.compare(h, 0) == -1 or S.compare(h, t) == 1:
        raise HOutOfRange(f"h={h} outside (0, t={t}]")


def cap_sol(h, t):
    """Solid angle of the cone at 0 spanned by the cap C(v, t), |v| = 2h."""
    _check_h(h, t)
    return 2 * S.pi_like(S.leader(h, t)) * (1 - h / t)


def cap_vol(h, t):
    """Volume of the cap {x in B(0,t) : |x - v| <= |x|} with |v| = 2h."""
    _check_h(h, t)
    return S.pi_like(S.leader(h, t)) * (t - h) * (t - h) * (2 * t + h) / 3


def cone_disk_vol(h, t):
    """phi(h, t, (1,0)) * cap_sol(h, t): the cone over the bisector disk.

    cap_vol + cone_disk_vol = cap_sol * t^3 / 3, the sector of B(0,t)."""
    return phi(h, t, VOLUME) * cap_sol(h, t)


def _quo_formula(a, b, c, p, q, bma):
    """Quoin volume from a, b, c, p = b^2 - a^2, q = c^2 - b^2, bma = b - a."""
    theta = S.atan2_pos(S.sqrt_nonneg(q), S.sqrt_nonneg(p))
    ape = a * S.sqrt_nonneg(p * q)
    inner = S.sqrt_nonneg(q * bma / (b + a)) / (b + c)
    return ((a + 2 * c) * (c - a) * (c - a) * theta + ape - 4 * c * c * c * S.atan(inner)) / 6


def quo(a, b, c):
    """Volume of the quoin with parameters a <= b <= c, and 0 otherwise.

    The closed form uses e = sqrt((c^2-b^2)/(b^2-a^2)); it is evaluated with
    atan(e) = atan2(sqrt(c^2-b^2), sqrt(b^2-a^2)) so that b -> a has the finite
    limit atan(e) -> pi/2.
    """
    lead = S.leader(a, b, c)
    if S.is_float(lead):
        if not (a <= b <= c):
            return 0.0
        p = (b - a) * (b + a)
        q = (c - b) * (c + b)
        if q <= 0:
            return 0.0
        return _quo_formula(a, b, c, p, q, b - a)

    ab = S.compare(a, b)
    bc = S.compare(b, c)
    inside = ab is not None and ab <= 0 and bc is not None and bc <= 0
    outside = ab == 1 or bc == 1
    if S.is_jet(lead):
        # number the site before any early return so that evaluations of
        # the same expression on different cells count sites alike
        site, fixed, recording = S.next_opaque_site()
        if fixed is not None:
            return S.lift(lead, fixed)
        if outside:
            return S.lift(lead, 0.0)
        if inside:
            try:
                return _quo_formula(a, b, c, (b - a) * (b + a), (c - b) * (c + b), b - a)
            except DomainViolation:
                if not recording:
                    raise
        elif not recording:
            raise S.NotSmoothOnCell("quoin ordering undecided on cell")
        # constant plus a remainder covering the quoin over the cell
        val = _quo_interval(*(S.value_interval(x) for x in (a, b, c)))
        mid = Interval(val.mid)
        S.record_opaque(site, mid)
        return S.lift(lead, mid).with_remainder(val - mid)
    if outside:
        return S.lift(lead, 0.0)
    return _quo_interval(*(S.value_interval(x) for x in (a, b, c)))


def _quo_thin(a: float, b: float, c: float) -> Interval:
    """Enclosure of quo at a point."""
    if not (a <= b <= c):
        return Interval(0.0)
    ai, bi, ci = Interval(a), Interval(b), Interval(c)
    bma = (bi - ai).clamp_nonneg()
    cmb = (ci - bi).clamp_nonneg()
    return _quo_formula(ai, bi, ci, bma * (bi + ai), cmb * (ci + bi), bma).clamp_nonneg()


def _quo_interval(ai, bi, ci):
    """Enclosure of quo over a box of parameters.

    In its own frame the quoin is {x >= a, y >= k x, z >= 0, |p| <= c} with
    k = sqrt(b^2 - a^2) / a, which grows as a and k shrink and as c grows.
    Evaluating at the extreme corners therefore brackets the volume without
    the cancellation of the closed form over wide intervals.  quo vanishes
    for b < a, so the lower bound is 0 whenever that is possible.
    """
    if ai.lo <= 0:
        raise DomainViolation("quo needs a > 0")
    if bi.lo >= ci.hi or ai.lo >= ci.hi:
        return Interval(0.0)
    if bi.lo <= ai.hi:
        b_big = ai.lo
    else:
        kk = (Interval(bi.lo).sqr() - Interval(ai.hi).sqr()) / Interval(ai.hi).sqr()
        b_big = max(ai.lo, (Interval(ai.lo) * (1 + kk.clamp_nonneg()).sqrt()).lo)
    upper = _quo_thin(ai.lo, b_big, ci.hi).hi
    lower = 0.0
    if bi.lo >= ai.hi:
        kk = (Interval(bi.hi).sqr() - Interval(ai.lo).sqr()) / Interval(ai.lo).sqr()
        b_small = (Interval(ai.hi) * (1 + kk.clamp_nonneg()).sqrt()).hi
        lower = max(0.0, _quo_thin(ai.hi, b_small, ci.lo).lo)
    return Interval(lower, max(lower, upper))
