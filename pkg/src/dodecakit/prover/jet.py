"""Second-order interval jets for rigorous Taylor bounds.

A :class:`Jet` carries an enclosure of a function value, of its gradient and
(for ``order == 2``) of its Hessian over a cell.  Gradient and Hessian entries
are stored as numpy ``lo``/``hi`` arrays; every rounded array result is pushed
one ulp outward with ``nextafter``, which encloses a round-to-nearest result.
Products and sums involving an exact zero interval are exact, so structural
zeros (the Hessian of a linear function, for instance) stay exactly zero.

A jet may also carry an interval remainder ``rem``: the function it encloses
is ``s + rho`` where ``s`` is the smooth part described by the value,
gradient and Hessian fields and ``rho(x)`` lies in ``rem`` everywhere on the
cell.  Remainders enter at non-smooth sites and are pushed through later
operations with the mean-value theorem.

Cell jets also carry the value at the cell center.  After every operation the
value enclosure is intersected with the mean-value form
``f(c) + grad f(cell) . (x - c)``, which keeps intermediate ranges (and so the
branch decisions and chain-rule factors computed from them) tight on small
cells.
"""

from __future__ import annotations

import numpy as np

from ..ival import DomainViolation, Interval

_NEG = -np.inf
_POS = np.inf
_U = 2.0 ** -53


def _zero(lo, hi):
    return (lo == 0) & (hi == 0)


def iadd(alo, ahi, blo, bhi):
    exact = _zero(alo, ahi) | _zero(blo, bhi)
    lo = alo + blo
    hi = ahi + bhi
    return np.where(exact, lo, np.nextafter(lo, _NEG)), np.where(exact, hi, np.nextafter(hi, _POS))


def imul(alo, ahi, blo, bhi):
    p1 = alo * blo
    p2 = alo * bhi
    p3 = ahi * blo
    p4 = ahi * bhi
    lo = np.minimum(np.minimum(p1, p2), np.minimum(p3, p4))
    hi = np.maximum(np.maximum(p1, p2), np.maximum(p3, p4))
    exact = _zero(alo, ahi) | _zero(blo, bhi)
    return np.where(exact, 0.0, np.nextafter(lo, _NEG)), np.where(exact, 0.0, np.nextafter(hi, _POS))


def isqr(alo, ahi):
    lo, hi = imul(alo, ahi, alo, ahi)
    nonneg = (alo >= 0) | (ahi <= 0)
    return np.where(nonneg, np.maximum(lo, 0.0), 0.0), hi


def isum(lo, hi) -> Interval:
    """Enclosure of the sum of an interval vector."""
    n = lo.size
    if n == 0:
        return Interval(0.0)
    s_lo = float(lo.sum())
    s_hi = float(hi.sum())
    # recursive summation error is at most (n-1) u sum |x_i|; pad generously
    pad_lo = 2.0 * n * _U * float(np.abs(lo).sum()) + 1e-300
    pad_hi = 2.0 * n * _U * float(np.abs(hi).sum()) + 1e-300
    return Interval(float(np.nextafter(s_lo - pad_lo, _NEG)), float(np.nextafter(s_hi + pad_hi, _POS)))


def _scale(s: Interval, lo, hi):
    if s.lo == 0 and s.hi == 0:
        return np.zeros_like(lo), np.zeros_like(hi)
    return imul(s.lo, s.hi, lo, hi)


def _radd(a, b):
    if a is None:
        return b
    return a if b is None else a + b


def _as_iv(x) -> Interval:
    return x if isinstance(x, Interval) else Interval.point(float(x))


class CellContext:
    """Offsets x - c of the cell around its center, shared by all jets of one
    evaluation."""

    __slots__ = ("d_lo", "d_hi")

    def __init__(self, sides, center):
        d = [s - Interval(c) for s, c in zip(sides, center)]
        self.d_lo = np.array([x.lo for x in d])
        self.d_hi = np.array([x.hi for x in d])


class Jet:
    """Enclosure of (f, grad f, Hess f) over a cell."""

    __slots__ = ("v", "g_lo", "g_hi", "h_lo", "h_hi", "order", "c", "ctx", "rem")

    def __init__(self, v: Interval, g_lo, g_hi, h_lo=None, h_hi=None, order=2, c=None, ctx=None,
                 rem=None):
        self.rem = rem
        self.g_lo = g_lo
        self.g_hi = g_hi
        self.h_lo = h_lo
        self.h_hi = h_hi
        self.order = order
        self.c = c
        self.ctx = ctx
        if ctx is not None and c is not None:
            c = c.intersect(v) or c
            self.c = c
            mv = c + isum(*imul(g_lo, g_hi, ctx.d_lo, ctx.d_hi))
            tight = v.intersect(mv)
            if tight is None:
                raise DomainViolation("inconsistent jet enclosures")
            v = tight
        self.v = v

    @property
    def dim(self) -> int:
        return self.g_lo.shape[0]

    @classmethod
    def variable(cls, i: int, value: Interval, m: int, order: int = 2, center=None, ctx=None) -> "Jet":
        g = np.zeros(m)
        g[i] = 1.0
        h = np.zeros((m, m)) if order == 2 else None
        c = Interval(center) if ctx is not None else None
        return cls(_as_iv(value), g, g.copy(), h, None if h is None else h.copy(), order, c, ctx)

    @classmethod
    def constant(cls, value, m: int, order: int = 2, ctx=None) -> "Jet":
        g = np.zeros(m)
        h = np.zeros((m, m)) if order == 2 else None
        v = _as_iv(value)
        return cls(v, g, g.copy(), h, None if h is None else h.copy(), order, v if ctx else None, ctx)

    # protocol used by the geometry formulas
    def lift(self, value) -> "Jet":
        return Jet.constant(value, self.dim, self.order, self.ctx)

    def value_interval(self) -> Interval:
        return self.v if self.rem is None else self.v + self.rem

    def with_remainder(self, rem: Interval) -> "Jet":
        """The same smooth part with ``rem`` added to the remainder."""
        total = rem if self.rem is None else self.rem + rem
        return Jet(self.v, self.g_lo, self.g_hi, self.h_lo, self.h_hi, self.order, self.c, self.ctx, total)

    def _between(self) -> Interval:
        """Values between s(x) and s(x) + rho(x), where mean-value points lie."""
        return self.v if self.rem is None else self.v.hull(self.v + self.rem)

    def gradient(self):
        return [Interval(lo, hi) for lo, hi in zip(self.g_lo.tolist(), self.g_hi.tolist())]

    def hessian(self):
        if self.order < 2:
            raise ValueError("first-order jet has no Hessian")
        m = self.dim
        return [[Interval(float(self.h_lo[i, j]), float(self.h_hi[i, j])) for j in range(m)] for i in range(m)]

    def _new(self, v, g, h, c, rem=None):
        return Jet(v, g[0], g[1], h[0], h[1], self.order, c, self.ctx, rem)

    def _c(self, fn, *others):
        """Center value of a result, or None when centers are not tracked."""
        if self.c is None:
            return None
        return fn(self.c, *others)

    # arithmetic
    def __add__(self, other):
        if not isinstance(other, Jet):
            s = _as_iv(other)
            return self._new(self.v + s, (self.g_lo, self.g_hi), (self.h_lo, self.h_hi),
                             self._c(lambda c: c + s), self.rem)
        g = iadd(self.g_lo, self.g_hi, other.g_lo, other.g_hi)
        h = iadd(self.h_lo, self.h_hi, other.h_lo, other.h_hi) if self.order == 2 else (None, None)
        c = self.c + other.c if self.c is not None and other.c is not None else None
        return self._new(self.v + other.v, g, h, c, _radd(self.rem, other.rem))

    __radd__ = __add__

    def __neg__(self):
        h = (-self.h_hi, -self.h_lo) if self.order == 2 else (None, None)
        rem = None if self.rem is None else -self.rem
        return self._new(-self.v, (-self.g_hi, -self.g_lo), h, None if self.c is None else -self.c, rem)

    def __sub__(self, other):
        return self + (-other if isinstance(other, Jet) else -_as_iv(other))

    def __rsub__(self, other):
        return (-self) + other

    def _scaled(self, s: Interval):
        g = _scale(s, self.g_lo, self.g_hi)
        h = _scale(s, self.h_lo, self.h_hi) if self.order == 2 else (None, None)
        rem = None if self.rem is None else self.rem * s
        return self._new(self.v * s, g, h, self._c(lambda c: c * s), rem)

    def __mul__(self, other):
        if not isinstance(other, Jet):
            return self._scaled(_as_iv(other))
        o = other
        u0, w0 = self.v, o.v
        g = iadd(*_scale(u0, o.g_lo, o.g_hi), *_scale(w0, self.g_lo, self.g_hi))
        h = (None, None)
        if self.order == 2:
            cross = imul(self.g_lo[:, None], self.g_hi[:, None], o.g_lo[None, :], o.g_hi[None, :])
            sym = iadd(cross[0], cross[1], cross[0].T, cross[1].T)
            h = iadd(*_scale(u0, o.h_lo, o.h_hi), *_scale(w0, self.h_lo, self.h_hi))
            h = iadd(*h, *sym)
        c = self.c * o.c if self.c is not None and o.c is not None else None
        # (s1 + r1)(s2 + r2) - s1 s2 = s1 r2 + r1 s2 + r1 r2
        rem = None
        if self.rem is not None or o.rem is not None:
            rem = Interval(0.0)
            if o.rem is not None:
                rem = rem + u0 * o.rem
            if self.rem is not None:
                rem = rem + self.rem * w0
                if o.rem is not None:
                    rem = rem + self.rem * o.rem
        return self._new(u0 * w0, g, h, c, rem)

    __rmul__ = __mul__

    def _unary(self, g0: Interval, g1: Interval, g2: Interval, c=None, d1=None):
        """Chain rule with value g0, first and second derivatives g1, g2 over
        the smooth range; ``d1`` encloses the first derivative between s and
        s + rho and scales the remainder."""
        g = _scale(g1, self.g_lo, self.g_hi)
        h = (None, None)
        if self.order == 2:
            outer = imul(self.g_lo[:, None], self.g_hi[:, None], self.g_lo[None, :], self.g_hi[None, :])
            dlo, dhi = isqr(self.g_lo, self.g_hi)
            olo, ohi = outer[0].copy(), outer[1].copy()
            np.fill_diagonal(olo, dlo)
            np.fill_diagonal(ohi, dhi)
            h = iadd(*_scale(g1, self.h_lo, self.h_hi), *_scale(g2, olo, ohi))
        rem = None if self.rem is None else d1 * self.rem
        return self._new(g0, g, h, c, rem)

    def recip(self):
        w = self.v
        full = self._between()
        if full.lo <= 0 <= full.hi:
            raise DomainViolation("jet division by an interval containing 0")
        r = 1 / w
        d1 = None if self.rem is None else -(1 / full.sqr())
        return self._unary(r, -(r * r), 2 * r * r * r, self._c(lambda c: 1 / c), d1)

    def __truediv__(self, other):
        if not isinstance(other, Jet):
            return self._scaled(1 / _as_iv(other))
        return self * other.recip()

    def __rtruediv__(self, other):
        return self.recip()._scaled(_as_iv(other))

    def sqrt(self):
        w = self.v
        full = self._between()
        if not full.lo > 0:
            raise DomainViolation("jet sqrt needs a positive argument")
        s = w.sqrt()
        d1 = None if self.rem is None else 1 / (2 * full.sqrt())
        return self._unary(s, 1 / (2 * s), -1 / (4 * w * s), self._c(lambda c: c.sqrt()), d1)

    def atan(self):
        w = self.v
        d = 1 + w.sqr()
        d1 = None if self.rem is None else 1 / (1 + self._between().sqr())
        return self._unary(w.atan(), 1 / d, -2 * w / (d * d), self._c(lambda c: c.atan()), d1)

    def __repr__(self):
        return f"Jet(v={self.v}, order={self.order}, dim={self.dim})"
