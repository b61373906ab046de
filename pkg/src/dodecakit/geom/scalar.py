"""Scalar-kind dispatch shared by the geometry formulas.

The formulas are written once and evaluated with plain floats, with
:class:`Interval`, or with any object implementing the small protocol below
(``sqrt``, ``atan``, ``lift`` and ``value_interval``), such as the Taylor jets
used by the prover.
"""

import contextlib
import contextvars
import math

from ..ival import DomainViolation, Interval
from ..ival.atan import atan_ratio
from ..ival.constants import pi as _pi_iv


class NotSmoothOnCell(ArithmeticError):
    """A branch condition is undecided over the current cell (jet mode only)."""


class RegimeUndecided(NotSmoothOnCell):
    """A piecewise formula switches branch inside the cell (jet mode only).

    ``site`` numbers the piecewise call in evaluation order; callers may
    re-evaluate with a branch forced at that site through ``forced_branches``.
    """

    def __init__(self, msg, site=None):
        super().__init__(msg)
        self.site = site


_FORCED = contextvars.ContextVar("forced_branches", default=None)


@contextlib.contextmanager
def forced_branches(choices):
    """Force branches at piecewise sites: ``choices`` maps site index to
    branch name.  Sites are counted per evaluation, in call order."""
    token = _FORCED.set([dict(choices), 0])
    try:
        yield
    finally:
        _FORCED.reset(token)


def next_branch_site():
    """Number the next piecewise site and return (index, forced choice)."""
    state = _FORCED.get()
    if state is None:
        return None, None
    k = state[1]
    state[1] += 1
    return k, state[0].get(k)


_NP_SCALARS = {"float64", "float32", "int64", "int32"}


_OPAQUE = contextvars.ContextVar("opaque_sites", default=None)


@contextlib.contextmanager
def opaque_sites(values=None):
    """Let non-smooth sites return a constant plus an interval remainder.

    With ``values`` None the sites are recorded: an undecided site stores the
    constant it used under its index in the yielded dict.  Passing a recorded
    dict replays it, so that another evaluation uses the same constants at
    the same sites.
    """
    recording = values is None
    state = [{} if recording else dict(values), 0, recording]
    token = _OPAQUE.set(state)
    try:
        yield state[0]
    finally:
        _OPAQUE.reset(token)


def next_opaque_site():
    """Number the next non-smooth site; returns (index, replayed constant,
    recording flag)."""
    state = _OPAQUE.get()
    if state is None:
        return None, None, False
    k = state[1]
    state[1] += 1
    return k, (None if state[2] else state[0].get(k)), state[2]


def record_opaque(site, value):
    _OPAQUE.get()[0][site] = value


def is_float(x) -> bool:
    return isinstance(x, (float, int)) or type(x).__name__ in _NP_SCALARS


def is_interval(x) -> bool:
    return isinstance(x, Interval)


def is_jet(x) -> bool:
    return hasattr(x, "value_interval")


def leader(*xs):
    """Return the argument whose kind governs the computation."""
    best = xs[0]
    for x in xs:
        if is_jet(x):
            return x
        if is_interval(x):
            best = x
    return best


def lift(like, value):
    """Convert ``value`` (float, int or Interval) to the scalar kind of ``like``."""
    if is_jet(like):
        return like.lift(value)
    if is_interval(like):
        return value if isinstance(value, Interval) else Interval.point(value)
    if isinstance(value, Interval):
        return value.mid
    return float(value)


def pi_like(like):
    if is_float(like):
        return math.pi
    return lift(like, _pi_iv())


def sqrt(x):
    if is_float(x):
        if x < 0:
            raise DomainViolation(f"sqrt of {x!r}")
        return math.sqrt(x)
    return x.sqrt()


def sqrt_nonneg(x):
    """sqrt of a quantity that is mathematically nonnegative; tiny negative
    rounding artefacts are clamped to 0."""
    if is_float(x):
        return math.sqrt(max(x, 0.0))
    if is_interval(x):
        return x.clamp_nonneg().sqrt()
    return x.sqrt()


def atan(x):
    if is_float(x):
        return math.atan(x)
    return x.atan()


def atan2_pos(num, den):
    """atan(num / den) for den >= 0, including the den -> 0 limit."""
    if is_float(num) and is_float(den):
        if den < 0:
            raise DomainViolation("negative denominator")
        if den == 0:
            return math.copysign(math.pi / 2, num) if num != 0 else 0.0
        return math.atan(num / den)
    if is_jet(num) or is_jet(den):
        return atan(num / den)
    n = num if is_interval(num) else Interval.point(num)
    d = den if is_interval(den) else Interval.point(den)
    return atan_ratio(n, d.clamp_nonneg())


def value_interval(x) -> Interval:
    if is_float(x):
        return Interval.point(float(x))
    if is_interval(x):
        return x
    return x.value_interval()


def sign(x):
    """+1, -1 or 0 when the sign is certain, otherwise None."""
    if is_float(x):
        return int(x > 0) - int(x < 0)
    v = value_interval(x)
    if v.lo > 0:
        return 1
    if v.hi < 0:
        return -1
    if v.lo == 0 and v.hi == 0:
        return 0
    return None


def compare(a, b):
    """Sign of a - b when certain, otherwise None."""
    if is_float(a) and is_float(b):
        return int(a > b) - int(a < b)
    return sign(value_interval(a) - value_interval(b))


def hull(a, b):
    return value_interval(a).hull(value_interval(b))
