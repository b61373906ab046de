"""Packings around the origin and their contact graphs."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path

import networkx as nx
import numpy as np

from ..hmap import Hypermap
from ..ival import constants as K

T_DOD = K.t_dod().mid
# absolute slack for decimal input that lands an ulp outside [2, 2t] or below distance 2
VALIDATION_ATOL = 1e-9
# |sin| below which two directions count as parallel
PARALLEL_TOL = 1e-12


class InvalidPacking(ValueError):
    pass


class NotSpherical(ValueError):
    """Two radial edge arcs meet away from a shared endpoint."""


class CollinearWithOrigin(ValueError):
    pass


class NotConnected(ValueError):
    pass


class NotBiconnected(ValueError):
    pass


@dataclass(frozen=True)
class Packing:
    """Points of Lambda* = Lambda minus the origin; the origin is implicit."""

    points: tuple
    t: float = T_DOD

    def __post_init__(self):
        pts = tuple(tuple(float(c) for c in p) for p in self.points)
        for p in pts:
            if len(p) != 3 or not all(math.isfinite(c) for c in p):
                raise InvalidPacking(f"point {p} is not a finite vector in R^3")
        arr = np.array(pts, dtype=float).reshape(-1, 3)
        norms = np.linalg.norm(arr, axis=1)
        for p, r in zip(pts, norms):
            if r < 2 - VALIDATION_ATOL or r > 2 * self.t + VALIDATION_ATOL:
                raise InvalidPacking(f"|{p}| = {r!r} is outside [2, 2t]")
        for i in range(len(pts)):
            d = np.linalg.norm(arr[i + 1:] - arr[i], axis=1)
            j = np.flatnonzero(d < 2 - VALIDATION_ATOL)
            if len(j):
                raise InvalidPacking(f"points {i} and {i + 1 + int(j[0])} are closer than 2")
        object.__setattr__(self, "points", pts)

    @classmethod
    def truncated(cls, points, t: float = T_DOD) -> "Packing":
        """Keep only the points within 2t of the origin: Lambda(0, 2t)."""
        keep = [p for p in points if np.linalg.norm(p) <= 2 * t + VALIDATION_ATOL]
        return cls(tuple(keep), t)

    def __len__(self):
        return len(self.points)

    def array(self) -> np.ndarray:
        return np.array(self.points, dtype=float).reshape(-1, 3)


@dataclass
class PackingGraph:
    packing: Packing
    edges: list  # sorted pairs (i, j), i < j
    sigma: list  # sigma[v] = neighbours of v in counterclockwise order
    _position: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        for v, ring in enumerate(self.sigma):
            for k, u in enumerate(ring):
                self._position[(v, u)] = k

    @property
    def points(self):
        return self.packing.points

    def degree(self, v) -> int:
        return len(self.sigma[v])

    def succ(self, v, u):
        """sigma_v u: the neighbour after u around v."""
        ring = self.sigma[v]
        return ring[(self._position[(v, u)] + 1) % len(ring)]

    def pred(self, v, u):
        ring = self.sigma[v]
        return ring[(self._position[(v, u)] - 1) % len(ring)]

    def nx_graph(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(len(self.sigma)))
        g.add_edges_from(self.edges)
        return g

    def islands(self):
        """Vertex sets of the connected components, sorted."""
        return sorted(sorted(c) for c in nx.connected_components(self.nx_graph()))

    def darts(self):
        return sorted((v, u) for v in range(len(self.sigma)) for u in self.sigma[v])

    def faces(self):
        """Faces as vertex cycles, counterclockwise seen from outside."""
        return [list(c) for c in _face_cycles(self)]


def _unit(v):
    v = np.asarray(v, dtype=float)
    return v / np.linalg.norm(v)


def _frame(v):
    z = _unit(v)
    a = np.array([1.0, 0.0, 0.0]) if abs(z[0]) < 0.9 else np.array([0.0, 1.0, 0.0])
    x = np.cross(a, z)
    x /= np.linalg.norm(x)
    return x, np.cross(z, x)


def _ccw_order(points, v, nbrs):
    """Neighbours of v sorted by the angle of the half-plane P+(v, u) around
    the ray 0 -> v, counterclockwise when viewed from outside."""
    x, y = _frame(points[v])
    z = _unit(points[v])
    keyed = []
    for u in nbrs:
        w = np.asarray(points[u], dtype=float)
        perp = w - (w @ z) * z
        if np.linalg.norm(perp) <= PARALLEL_TOL * np.linalg.norm(w):
            raise CollinearWithOrigin(f"points {v} and {u} are collinear with the origin")
        keyed.append((math.atan2(perp @ y, perp @ x), u))
    keyed.sort()
    return [u for _, u in keyed]


def arcs_cross(a, b, c, d, tol=1e-12) -> bool:
    """Whether the short great arcs a->b and c->d (directions in R^3) share a
    point; touching within ``tol`` counts."""
    a, b, c, d = (_unit(p) for p in (a, b, c, d))
    n1 = np.cross(a, b)
    n2 = np.cross(c, d)
    q = np.cross(n1, n2)
    if np.linalg.norm(q) <= tol:
        # same great circle: overlap iff an endpoint of one lies on the other
        return any(_on_arc(p, a, b, tol) for p in (c, d)) or any(_on_arc(p, c, d, tol) for p in (a, b))
    q = q / np.linalg.norm(q)
    return any(_on_arc(s * q, a, b, tol) and _on_arc(s * q, c, d, tol) for s in (1.0, -1.0))


def _on_arc(p, a, b, tol):
    """p, a, b unit vectors with p on the great circle of a, b (up to tol)."""
    n = np.cross(a, b)
    if abs(p @ _unit(n)) > tol * 10:
        return False
    return np.cross(a, p) @ n >= -tol and np.cross(p, b) @ n >= -tol


def _check_spherical(points, edges):
    pts = [np.asarray(p, dtype=float) for p in points]
    for k, (a, b) in enumerate(edges):
        for c, d in edges[k + 1:]:
            if len({a, b, c, d}) < 4:
                continue
            if arcs_cross(pts[a], pts[b], pts[c], pts[d]):
                raise NotSpherical(f"edge arcs {a}-{b} and {c}-{d} cross")
        for c in range(len(pts)):
            if c not in (a, b) and _on_arc(_unit(pts[c]), _unit(pts[a]), _unit(pts[b]), 1e-12):
                raise NotSpherical(f"vertex {c} lies on the arc of edge {a}-{b}")


def build_graph(p: Packing) -> PackingGraph:
    """Edges join points at distance <= 2t (exact float comparison)."""
    arr = p.array()
    n = len(arr)
    limit = 2 * p.t
    edges = []
    nbrs = [[] for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if float(np.linalg.norm(arr[i] - arr[j])) <= limit:
                edges.append((i, j))
                nbrs[i].append(j)
                nbrs[j].append(i)
    sigma = [_ccw_order(arr, v, nbrs[v]) for v in range(n)]
    _check_spherical(arr, edges)
    return PackingGraph(p, edges, sigma)


def _face_cycles(g: PackingGraph):
    """Orbits of (v, w) -> (w, sigma_w^-1 v) as vertex cycles."""
    seen = set()
    out = []
    for start in g.darts():
        if start in seen:
            continue
        cyc = []
        x = start
        while x not in seen:
            seen.add(x)
            cyc.append(x[0])
            v, w = x
            x = (w, g.pred(w, v))
        out.append(tuple(cyc))
    return out


def require_biconnected(g: PackingGraph):
    n = len(g.sigma)
    if n < 3:
        raise NotBiconnected(f"{n} vertices; a biconnected packing graph needs at least 3")
    G = g.nx_graph()
    if not nx.is_connected(G):
        raise NotConnected(f"graph has {nx.number_connected_components(G)} components")
    if not nx.is_biconnected(G):
        cut = sorted(nx.articulation_points(G))
        raise NotBiconnected(f"cut vertices {cut}")


def to_hypermap(g: PackingGraph) -> Hypermap:
    """Darts are oriented edges (v, u): e reverses, n turns counterclockwise
    around v, f steps to the next edge of the face on the left."""
    require_biconnected(g)
    darts = g.darts()
    index = {d: k for k, d in enumerate(darts)}
    e = [index[(u, v)] for v, u in darts]
    n = [index[(v, g.succ(v, u))] for v, u in darts]
    f = [index[(u, g.pred(u, v))] for v, u in darts]
    return Hypermap(e, n, f, tails=[v for v, _ in darts])


# packing files: one point per line "x y z"


def parse_packing(lines, t: float = T_DOD) -> Packing:
    pts = []
    for lineno, ln in enumerate(lines, 1):
        ln = ln.split("#", 1)[0].strip()
        if not ln:
            continue
        tok = ln.split()
        if len(tok) != 3:
            raise InvalidPacking(f"line {lineno}: expected 3 coordinates, got {len(tok)}")
        try:
            pts.append(tuple(float(x) for x in tok))
        except ValueError as exc:
            raise InvalidPacking(f"line {lineno}: {exc}") from exc
    return Packing(tuple(pts), t)


def read_packing(path, t: float = T_DOD) -> Packing:
    return parse_packing(Path(path).read_text().splitlines(), t)


def format_packing(p: Packing) -> str:
    return "".join(f"{x!r} {y!r} {z!r}\n" for x, y, z in p.points)
