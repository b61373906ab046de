"""Per-face solid angle, volume and score of a packing."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..geom import FaceCycle, azims, cap_vol, omega_face, omega_triangle, sol_girard
from ..geom.cells import is_cap_regime
from ..ival import constants as K
from .graph import NotBiconnected, Packing, PackingGraph, build_graph, require_biconnected, to_hypermap

M_DOD = K.m_dod().mid


@dataclass(frozen=True)
class StandardComponentReport:
    face_id: int
    cycle: tuple  # vertex indices, counterclockwise from outside
    sol: float
    omega: float
    mu: float
    azim: tuple  # interior angle at each vertex of the cycle


@dataclass(frozen=True)
class ReportTotals:
    faces: int
    sol: float
    omega: float
    mu: float


@dataclass(frozen=True)
class DartValues:
    dart: int
    v: int
    u: int
    face_id: int
    yn: float
    ye: float
    sol: float
    azim: float
    mu: float
    omega: float


def face_omega(points, t: float) -> float:
    """omega of the standard component over a counterclockwise face.

    A triangle goes to the orthoscheme formula when it bounds the simplex
    cone (positive orientation) and its circumradius is below t; every
    other face uses inclusion-exclusion."""
    face = FaceCycle(points)
    if face.r == 3 and np.linalg.det(np.array(points, dtype=float)) > 0 and not is_cap_regime(face, t):
        return omega_triangle(*face.vertices, t=t)
    return omega_face(face, t, check_regime=False)


def _face_report(face_id, cycle, points, t, m):
    verts = [points[i] for i in cycle]
    face = FaceCycle(verts)
    sol = sol_girard(face)
    omega = face_omega(verts, t)
    return StandardComponentReport(face_id, tuple(cycle), sol, omega, omega - m * sol, tuple(azims(face)))


def face_cycles(g: PackingGraph):
    """Faces of the hypermap of ``g``, in its face order, as vertex cycles."""
    h = to_hypermap(g)
    return [tuple(h.tails[x] for x in face) for face in h.faces()]


def component_report(p: Packing | PackingGraph, m: float = M_DOD):
    g = p if isinstance(p, PackingGraph) else build_graph(p)
    t = g.packing.t
    return [_face_report(k, cyc, g.points, t, m) for k, cyc in enumerate(face_cycles(g))]


def totals(reports) -> ReportTotals:
    reports = list(reports)
    return ReportTotals(
        len(reports),
        math.fsum(r.sol for r in reports),
        math.fsum(r.omega for r in reports),
        math.fsum(r.mu for r in reports),
    )


def ball_volume(t: float) -> float:
    return 4 * math.pi * t ** 3 / 3


def total_omega(p: Packing) -> float:
    """Volume of the truncated Voronoi cell of the origin for a graph whose
    islands are single points or biconnected.

    Caps of points more than 2t apart are disjoint, so each island removes
    its own volume from the ball independently of the others."""
    g = build_graph(p)
    t = p.t
    ball = ball_volume(t)
    parts = []
    for island in g.islands():
        if len(island) == 1:
            h = float(np.linalg.norm(p.points[island[0]])) / 2
            parts.append(-cap_vol(h, t))
            continue
        if len(island) == 2:
            raise NotBiconnected(f"island {island} is a single edge")
        sub = build_graph(Packing(tuple(p.points[i] for i in island), t))
        require_biconnected(sub)
        parts.append(totals(component_report(sub)).omega - ball)
    return ball + math.fsum(parts)


def feasibility_assignment(p: Packing | PackingGraph, m: float = M_DOD):
    """Values attached to each dart (v, u) of the hypermap: yn = |v|,
    ye = |v - u|, and the sol, azim at v, mu and omega of its face."""
    g = p if isinstance(p, PackingGraph) else build_graph(p)
    h = to_hypermap(g)
    reports = component_report(g, m)
    pts = np.array(g.points, dtype=float)
    out = [None] * h.size
    for k, face in enumerate(h.faces()):
        rep = reports[k]
        for pos, x in enumerate(face):
            v, u = h.tails[x], h.tails[h.f[x]]
            out[x] = DartValues(
                x, v, u, k,
                float(np.linalg.norm(pts[v])),
                float(np.linalg.norm(pts[v] - pts[u])),
                rep.sol, rep.azim[pos], rep.mu, rep.omega,
            )
    return out
