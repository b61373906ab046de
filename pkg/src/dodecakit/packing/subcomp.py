"""Splitting a face into subfaces along short, stable, internal diagonals."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .graph import (
    PARALLEL_TOL,
    Packing,
    PackingGraph,
    T_DOD,
    _on_arc,
    _unit,
    arcs_cross,
    build_graph,
)

SQRT8 = math.sqrt(8.0)
DISTINGUISHED_MAX = 3.2


@dataclass(frozen=True)
class SubFace:
    cycle: tuple  # vertex indices, counterclockwise from outside
    n: int
    k: int  # edges of length >= 2t


def _norm(x):
    return float(np.linalg.norm(np.asarray(x, dtype=float)))


def is_unstable_triple(u, v, w, t: float = T_DOD) -> bool:
    two_t = 2 * t
    return (
        _norm(u) < two_t and _norm(v) < two_t
        and _norm(np.subtract(u, v)) < two_t and _norm(np.subtract(v, w)) < two_t
        and _norm(np.subtract(u, w)) > SQRT8
    )


def is_stable_pair(u, w, others, t: float = T_DOD) -> bool:
    """No v among ``others`` makes (u, v, w) or (w, v, u) unstable."""
    for v in others:
        if is_unstable_triple(u, v, w, t) or is_unstable_triple(w, v, u, t):
            return False
    return True


def _graph(p) -> PackingGraph:
    return p if isinstance(p, PackingGraph) else build_graph(p)


def _adjacent(cycle, u, w):
    r = len(cycle)
    i = cycle.index(u)
    return cycle[(i + 1) % r] == w or cycle[(i - 1) % r] == w


def _open_arcs_meet(pts, a, b, c, d) -> bool:
    """Whether the open arcs a-b and c-d (vertex indices) meet."""
    shared = {a, b} & {c, d}
    if not shared:
        return arcs_cross(pts[a], pts[b], pts[c], pts[d])
    if len(shared) == 2:
        return True
    s = shared.pop()
    x = b if a == s else a
    y = d if c == s else c
    ux, uy, us = _unit(pts[x]), _unit(pts[y]), _unit(pts[s])
    # arcs leaving s in the same direction overlap
    return _on_arc(ux, us, uy, 1e-12) or _on_arc(uy, us, ux, 1e-12)


def winding_contains(m, verts) -> bool:
    """Whether the unit vector m lies inside the spherical polygon traced
    counterclockwise (seen from outside) through ``verts``: the azimuths of
    the vertices around m must wind once counterclockwise."""
    m = _unit(m)
    x = np.cross(np.array([1.0, 0.0, 0.0]) if abs(m[0]) < 0.9 else np.array([0.0, 1.0, 0.0]), m)
    x /= np.linalg.norm(x)
    y = np.cross(m, x)
    angles = []
    for v in verts:
        v = np.asarray(v, dtype=float)
        tan = v - (v @ m) * m
        angles.append(math.atan2(tan @ y, tan @ x))
    total = 0.0
    for i in range(len(angles)):
        d = angles[(i + 1) % len(angles)] - angles[i]
        d = (d + math.pi) % (2 * math.pi) - math.pi
        total += d
    return round(total / (2 * math.pi)) == 1


def is_internal_pair(p, face, u, w) -> bool:
    """{0, u, w} not collinear and the open arc u-w lies in the face region."""
    g = _graph(p)
    pts = np.array(g.points, dtype=float)
    face = list(face)
    if u == w or u not in face or w not in face:
        return False
    if (min(u, w), max(u, w)) in set(g.edges) or _adjacent(face, u, w):
        return False
    cu, cw = _unit(pts[u]), _unit(pts[w])
    if np.linalg.norm(np.cross(cu, cw)) <= PARALLEL_TOL:
        return False
    for a, b in g.edges:
        if _open_arcs_meet(pts, u, w, a, b):
            return False
    for c in range(len(pts)):
        if c not in (u, w) and _on_arc(_unit(pts[c]), cu, cw, 1e-12):
            return False
    return winding_contains(cu + cw, [pts[i] for i in face])


def is_distinguished(p, face, u, w) -> bool:
    g = _graph(p)
    pts = g.points
    if _norm(np.subtract(pts[u], pts[w])) > DISTINGUISHED_MAX:
        return False
    if not is_internal_pair(g, face, u, w):
        return False
    others = [pts[i] for i in face if i not in (u, w)]
    return is_stable_pair(pts[u], pts[w], others, g.packing.t)


def distinguished_edges(p, face):
    """The greedy set X: distinguished pairs by increasing length, each kept
    when its open arc misses every arc already kept."""
    g = _graph(p)
    pts = np.array(g.points, dtype=float)
    face = list(face)
    cands = []
    for i, u in enumerate(face):
        for w in face[i + 1:]:
            if is_distinguished(g, face, u, w):
                cands.append((float(np.linalg.norm(pts[u] - pts[w])), min(u, w), max(u, w)))
    cands.sort()
    chosen = []
    for _, u, w in cands:
        if not any(_open_arcs_meet(pts, u, w, a, b) for a, b in chosen):
            chosen.append((u, w))
    return chosen


def _split(cycle, u, w):
    i, j = cycle.index(u), cycle.index(w)
    if i > j:
        i, j = j, i
    return cycle[i:j + 1], cycle[j:] + cycle[:i + 1]


def subcomponents(p, face):
    g = _graph(p)
    pts = np.array(g.points, dtype=float)
    two_t = 2 * g.packing.t
    parts = [list(face)]
    for u, w in distinguished_edges(g, face):
        for k, cyc in enumerate(parts):
            if u in cyc and w in cyc and not _adjacent(cyc, u, w):
                a, b = _split(cyc, u, w)
                parts[k:k + 1] = [a, b]
                break
    out = []
    for cyc in parts:
        r = len(cyc)
        k = sum(
            1 for i in range(r)
            if float(np.linalg.norm(pts[cyc[i]] - pts[cyc[(i + 1) % r]])) >= two_t
        )
        out.append(SubFace(tuple(cyc), r, k))
    return out


__all__ = [
    "SubFace",
    "distinguished_edges",
    "is_distinguished",
    "is_internal_pair",
    "is_stable_pair",
    "is_unstable_triple",
    "subcomponents",
    "winding_contains",
]
