"""Volumes and solid angles of the pieces of a truncated Voronoi cell.

Two regimes are used.  For a face of the packing graph with four or more
vertices, or a triangle whose simplex circumradius is at least t, the volume is
given by inclusion-exclusion over caps and quoins.  For a triangle whose
simplex circumradius is below t, the volume of conv(S) intersected with the
Voronoi cell is a sum of six orthoschemes anchored at 0, the edge midpoints,
the face circumcenters and the circumcenter of S.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..ival import DomainViolation
from ..ival import constants as K
from . import scalar as S
from . import vec
from .caps import VOLUME, a_fun, phi, quo
from .simplex import circumradius_sq6, dih6, dihs_y, eta, eta2_sq, lengths_to_squares

# relative slack used when routing a triangle whose circumradius equals t up to rounding
ROUTING_RTOL = 1e-12


class PreconditionRegime(DomainViolation):
    """A triangle below the cap regime was passed to the inclusion-exclusion formula."""


class RegimeMismatch(DomainViolation):
    """A triangle at or above the cap regime was passed to the orthoscheme formula."""


def t_default():
    return K.t_dod().mid


def m_default():
    return K.m_dod().mid


@dataclass(frozen=True)
class FaceCycle:
    """Vertices of a face, listed counterclockwise as seen from outside."""

    vertices: tuple

    def __post_init__(self):
        vs = tuple(tuple(v) for v in self.vertices)
        if len(vs) < 3:
            raise ValueError("a face needs at least three vertices")
        object.__setattr__(self, "vertices", vs)

    @property
    def r(self) -> int:
        return len(self.vertices)

    def neighbours(self, i):
        n = self.r
        return self.vertices[(i - 1) % n], self.vertices[i], self.vertices[(i + 1) % n]

    def h(self, i):
        return S.sqrt(vec.norm2(self.vertices[i])) / 2

    def b_pm(self, i):
        prev, v, nxt = self.neighbours(i)
        nv = S.sqrt(vec.norm2(v))
        plus = eta(nv, S.sqrt(vec.norm2(nxt)), S.sqrt(vec.dist2(v, nxt)))
        minus = eta(nv, S.sqrt(vec.norm2(prev)), S.sqrt(vec.dist2(v, prev)))
        return plus, minus


def azim_at(face: FaceCycle, i):
    """Interior angle of the spherical polygon at vertex i, in (0, 2 pi)."""
    prev, v, nxt = face.neighbours(i)
    x1 = vec.norm2(v)
    x2 = vec.norm2(nxt)
    x3 = vec.norm2(prev)
    x4 = vec.dist2(nxt, prev)
    x5 = vec.dist2(v, prev)
    x6 = vec.dist2(v, nxt)
    d = dih6(x1, x2, x3, x4, x5, x6)
    s = S.sign(vec.det3(v, nxt, prev))
    two_pi = 2 * S.pi_like(S.leader(d))
    if s is None:
        if S.is_float(d):
            return d
        return S.hull(d, two_pi - d)
    return d if s >= 0 else two_pi - d


def azims(face: FaceCycle):
    return [azim_at(face, i) for i in range(face.r)]


def sol_girard(face: FaceCycle):
    a = azims(face)
    total = a[0]
    for x in a[1:]:
        total = total + x
    return total - (face.r - 2) * S.pi_like(S.leader(total))


def simplex_circumradius_sq(face: FaceCycle):
    v1, v2, v3 = face.vertices
    return circumradius_sq6(
        vec.norm2(v1), vec.norm2(v2), vec.norm2(v3),
        vec.dist2(v2, v3), vec.dist2(v1, v3), vec.dist2(v1, v2),
    )


def omega_face(face: FaceCycle, t=None, *, check_regime=True):
    """Volume of the cone over the face intersected with the truncated cell."""
    if t is None:
        t = t_default()
    if check_regime and face.r == 3:
        r2 = simplex_circumradius_sq(face)
        if S.compare(r2, t * t * (1 - ROUTING_RTOL)) == -1:
            raise PreconditionRegime("triangle below the cap regime; use omega_triangle")
    angles = azims(face)
    sol = angles[0]
    for x in angles[1:]:
        sol = sol + x
    sol = sol - (face.r - 2) * S.pi_like(S.leader(sol))
    total = sol * phi(t, t, VOLUME)
    for i in range(face.r):
        h = face.h(i)
        bp, bm = face.b_pm(i)
        total = total + angles[i] * a_fun(h, t, VOLUME) + quo(h, bp, t) + quo(h, bm, t)
    return total


def _lengths(v1, v2, v3):
    return (
        S.sqrt(vec.norm2(v1)), S.sqrt(vec.norm2(v2)), S.sqrt(vec.norm2(v3)),
        S.sqrt(vec.dist2(v2, v3)), S.sqrt(vec.dist2(v1, v3)), S.sqrt(vec.dist2(v1, v2)),
    )


_FACES_AT_EDGE = ((0, (1, 5), (2, 4)), (1, (0, 5), (2, 3)), (2, (0, 4), (1, 3)))


def omega_rogers_y(y1, y2, y3, y4, y5, y6):
    """Volume of conv(S) meeting the Voronoi cell of 0, for S = {0, v1, v2, v3}.

    Arguments are edge lengths in the six-edge order.  Valid when the
    circumcenters of S and of its faces lie in the corresponding hulls.
    """
    x = lengths_to_squares((y1, y2, y3, y4, y5, y6))
    r2 = circumradius_sq6(*x)
    total = None
    for i, (j, e_ij), (k, e_ik) in _FACES_AT_EDGE:
        h2 = x[i] / 4
        h = (y1, y2, y3)[i] / 2
        for other, edge in ((j, e_ij), (k, e_ik)):
            n2 = eta2_sq(x[i], x[other], x[edge])
            term = h * S.sqrt_nonneg(n2 - h2) * S.sqrt_nonneg(r2 - n2) / 6
            total = term if total is None else total + term
    return total


def omega_inex_y(y1, y2, y3, y4, y5, y6, t=None):
    """Inclusion-exclusion volume of the cone over the triangle {v1, v2, v3}."""
    if t is None:
        t = t_default()
    ys = (y1, y2, y3, y4, y5, y6)
    d = dihs_y(*ys)
    sol = d[0] + d[1] + d[2] - S.pi_like(S.leader(*d))
    total = sol * phi(t, t, VOLUME)
    for i, (j, e_ij), (k, e_ik) in _FACES_AT_EDGE:
        h = ys[i] / 2
        b1 = eta(ys[i], ys[j], ys[e_ij])
        b2 = eta(ys[i], ys[k], ys[e_ik])
        total = total + d[i] * a_fun(h, t, VOLUME) + quo(h, b1, t) + quo(h, b2, t)
    return total


def sol_y(y1, y2, y3, y4, y5, y6):
    d = dihs_y(y1, y2, y3, y4, y5, y6)
    return d[0] + d[1] + d[2] - S.pi_like(S.leader(*d))


def omega_simplex_y(y1, y2, y3, y4, y5, y6, t=None):
    """Volume for a triangular face, routed by the simplex circumradius.

    Circumradius below t uses the orthoscheme decomposition, above t the
    inclusion-exclusion formula; both agree on the boundary.  An interval
    argument straddling the boundary yields the hull of both.
    """
    if t is None:
        t = t_default()
    ys = (y1, y2, y3, y4, y5, y6)
    r2 = circumradius_sq6(*lengths_to_squares(ys))
    c = S.compare(r2, t * t)
    if S.is_float(r2):
        return omega_rogers_y(*ys) if c < 0 else omega_inex_y(*ys, t=t)
    if S.is_jet(r2):
        site, forced = S.next_branch_site()
        if forced is not None:
            c = -1 if forced == "rogers" else 1
        if c is None:
            raise S.RegimeUndecided("circumradius regime undecided on cell", site)
    if c == -1:
        return omega_rogers_y(*ys)
    if c is not None:
        return omega_inex_y(*ys, t=t)
    try:
        a = omega_rogers_y(*ys)
    except DomainViolation:
        return omega_inex_y(*ys, t=t)
    return S.hull(a, omega_inex_y(*ys, t=t))


SIMPLEX_BRANCHES = ("rogers", "inex")


def mu_simplex_y(y1, y2, y3, y4, y5, y6, t=None, m=None):
    if m is None:
        m = m_default()
    ys = (y1, y2, y3, y4, y5, y6)
    return omega_simplex_y(*ys, t=t) - m * sol_y(*ys)


def omega_triangle(v1, v2, v3, t=None):
    """Volume of conv({0, v1, v2, v3}) meeting the Voronoi cell of 0."""
    if t is None:
        t = t_default()
    ys = _lengths(v1, v2, v3)
    r2 = circumradius_sq6(*lengths_to_squares(ys))
    if S.compare(r2, t * t * (1 + ROUTING_RTOL)) == 1:
        raise RegimeMismatch("simplex circumradius exceeds t; use omega_face")
    return omega_rogers_y(*ys)


def is_cap_regime(face: FaceCycle, t=None) -> bool:
    if face.r != 3:
        return True
    if t is None:
        t = t_default()
    r2 = simplex_circumradius_sq(face)
    return S.compare(r2, t * t * (1 - ROUTING_RTOL)) != -1


def omega_any(face: FaceCycle, t=None):
    if is_cap_regime(face, t):
        return omega_face(face, t, check_regime=False)
    return omega_triangle(*face.vertices, t=t)


def mu_face(face: FaceCycle, t=None, m=None):
    if m is None:
        m = m_default()
    return omega_any(face, t) - m * sol_girard(face)
