"""First-order Taylor enclosures with a rigorous second-order remainder."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..geom.scalar import NotSmoothOnCell, RegimeUndecided, forced_branches, opaque_sites
from ..ival import DomainViolation, Interval, RoundingOverflow
from .expr import Expr, eval_generic
from .jet import CellContext, Jet


class NotC2OnCell(ArithmeticError):
    """The expression is not known to be twice differentiable on the cell."""


class _Undecided(NotC2OnCell):
    def __init__(self, msg, site):
        super().__init__(msg)
        self.site = site


# branch combinations tried on one cell before giving up
MAX_BRANCH_COMBOS = 8
_BRANCHES = ("rogers", "inex")


@dataclass(frozen=True)
class TaylorBound:
    center: tuple
    value: Interval            # f(center)
    gradient: tuple            # grad f(center), intervals
    hessian: tuple             # Hessian enclosure over the whole cell
    cell_value: Interval       # natural extension over the cell
    cell_gradient: tuple       # gradient enclosure over the cell, None if unknown
    enclosure: Interval


def _jet_eval(e: Expr, sides, order):
    m = len(sides)
    ctx = None
    center = [s.mid for s in sides]
    if any(s.lo < s.hi for s in sides):
        ctx = CellContext(sides, center)
    env = [Jet.variable(i, s, m, order, center[i], ctx) for i, s in enumerate(sides)]

    def lift(iv):
        return Jet.constant(iv, m, order, ctx)

    try:
        out = eval_generic(e, env, lift)
    except RegimeUndecided as exc:
        raise _Undecided(str(exc), exc.site) from exc
    except (DomainViolation, NotSmoothOnCell, RoundingOverflow, ZeroDivisionError) as exc:
        raise NotC2OnCell(str(exc)) from exc
    if isinstance(out, Interval):
        out = lift(out)
    if out.g_lo.size:
        arrays = [out.g_lo, out.g_hi] + ([out.h_lo, out.h_hi] if order == 2 else [])
        if not all(np.all(np.isfinite(a)) for a in arrays):
            raise NotC2OnCell("non-finite derivative enclosure")
    return out


def _branch_bound(e: Expr, sides, center) -> TaylorBound:
    # non-smooth sites on the cell become constants plus a remainder; the
    # center evaluation reuses the same constants so both describe one
    # smooth function
    with opaque_sites() as fixed:
        cell = _jet_eval(e, sides, 2)
    with opaque_sites(fixed):
        at_c = _jet_eval(e, [Interval(c) for c in center], 1)
    g = at_c.gradient()
    h = cell.hessian()
    d = [s - Interval(c) for s, c in zip(sides, center)]
    total = at_c.v
    m = len(sides)
    for i in range(m):
        if d[i].lo == 0 and d[i].hi == 0:
            continue
        total = total + g[i] * d[i]
        total = total + h[i][i] * d[i].sqr() * 0.5
        for j in range(i + 1, m):
            if d[j].lo == 0 and d[j].hi == 0:
                continue
            total = total + h[i][j] * (d[i] * d[j])
    cell_grad = tuple(cell.gradient())
    if cell.rem is not None:
        total = total + cell.rem
        # the smooth part's gradient says nothing about monotonicity of f
        cell_grad = None
    enc = total.intersect(cell.value_interval()) or total
    return TaylorBound(
        center=center,
        value=at_c.v,
        gradient=tuple(g),
        hessian=tuple(tuple(r) for r in h),
        cell_value=cell.value_interval(),
        cell_gradient=cell_grad,
        enclosure=enc,
    )


def _hull_bounds(bounds) -> TaylorBound:
    def hull(xs):
        out = xs[0]
        for x in xs[1:]:
            out = out.hull(x)
        return out

    first = bounds[0]
    m = len(first.gradient)
    return TaylorBound(
        center=first.center,
        value=hull([b.value for b in bounds]),
        gradient=tuple(hull([b.gradient[i] for b in bounds]) for i in range(m)),
        hessian=tuple(tuple(hull([b.hessian[i][j] for b in bounds]) for j in range(m)) for i in range(m)),
        cell_value=hull([b.cell_value for b in bounds]),
        cell_gradient=None if any(b.cell_gradient is None for b in bounds)
        else tuple(hull([b.cell_gradient[i] for b in bounds]) for i in range(m)),
        enclosure=hull([b.enclosure for b in bounds]),
    )


def taylor_bound(e: Expr, box) -> TaylorBound:
    """Taylor enclosure over ``box`` together with the data it was built from.

    When a piecewise primitive changes branch inside the cell, every branch
    combination is bounded separately (each branch formula is smooth on the
    whole cell) and the results are hulled.  At each point the function agrees
    with one of the combinations, so the hull encloses it.  Hessian and center
    data of a hulled bound are then only informative.
    """
    sides = list(box)
    center = tuple(s.mid for s in sides)
    found = []
    pending = [{}]
    while pending:
        choices = pending.pop()
        try:
            with forced_branches(choices):
                found.append(_branch_bound(e, sides, center))
        except _Undecided as exc:
            if exc.site is None or exc.site in choices:
                raise
            pending.extend({**choices, exc.site: b} for b in _BRANCHES)
            if len(pending) + len(found) > MAX_BRANCH_COMBOS:
                raise NotC2OnCell("too many undecided branches on cell") from exc
    return found[0] if len(found) == 1 else _hull_bounds(found)


def eval_taylor(e: Expr, box) -> Interval:
    """Taylor enclosure of ``e`` over ``box``; raises NotC2OnCell when the jets
    cannot be formed (non-smooth primitive or undecided branch)."""
    return taylor_bound(e, box).enclosure


def gradient_at(e: Expr, point):
    """Interval enclosure of the gradient at a point."""
    jet = _jet_eval(e, [Interval(float(x)) for x in point], 1)
    return jet.gradient()
