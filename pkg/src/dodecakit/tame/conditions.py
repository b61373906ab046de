"""The eleven tameness conditions on a hypermap."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from ..hmap import Hypermap, NodeType, is_connected, is_involutive, is_planar, node_type
from .weights import DEFAULT_EPSILON, node_adjacency, weight_feasible

CONDITIONS = {
    1: "involutive and planar",
    2: "connected",
    3: "simple faces",
    4: "at least 13 nodes",
    5: "face sizes 3..7",
    6: "triangle types",
    7: "no adjacent (4,0,0) nodes",
    8: "quadrilateral types",
    9: "degree at most 5 when r > 0",
    10: "degree 2..6",
    11: "weight assignment of total at most mu(Lambda_dod)",
}

MIN_NODES = 13
FACE_SIZES = range(3, 8)
DEGREES = range(2, 7)


@dataclass
class TameReport:
    results: dict = field(default_factory=dict)  # condition -> bool, or None if not evaluated
    details: dict = field(default_factory=dict)  # condition -> explanation of the failure

    @property
    def ok(self) -> bool:
        return all(self.results.get(k) is True for k in CONDITIONS)

    def failed(self):
        return [k for k in CONDITIONS if self.results.get(k) is False]

    def __bool__(self):
        return self.ok


class _Structure:
    """Node and face indices of each dart plus the node adjacency graph."""

    def __init__(self, h: Hypermap):
        self.h = h
        self.node = h.orbit_index("n")
        self.face = h.orbit_index("f")
        self.nodes = h.nodes()
        self.faces = h.faces()
        self.types = [node_type(h, k) for k in range(len(self.nodes))]
        self.adj = node_adjacency(h)
        self.nbrs = {k: set() for k in range(len(self.nodes))}
        for pair in self.adj:
            a, b = tuple(pair)
            self.nbrs[a].add(b)
            self.nbrs[b].add(a)
        # darts x in node a whose edge partner e(x) lies in node b
        self.edge_darts = {}
        for x in range(h.size):
            self.edge_darts.setdefault((self.node[x], self.node[h.e[x]]), []).append(x)


def _simple_faces(s: _Structure):
    for k, F in enumerate(s.faces):
        nodes = [s.node[x] for x in F]
        if len(set(nodes)) != len(nodes):
            return f"face {k} meets a node twice"
    return None


def _triangle_types(s: _Structure):
    tri = {frozenset(s.node[x] for x in F) for F in s.faces if len(F) == 3}
    for a in s.nbrs:
        for b in s.nbrs[a]:
            if b <= a:
                continue
            for c in s.nbrs[a] & s.nbrs[b]:
                if c > b and frozenset((a, b, c)) not in tri:
                    return f"nodes {a}, {b}, {c} are mutually adjacent but bound no triangle"
    return None


def _adjacent_400(s: _Structure):
    for pair in s.adj:
        a, b = tuple(pair)
        if s.types[a] == s.types[b] == NodeType(4, 0, 0):
            return f"adjacent (4,0,0) nodes {a}, {b}"
    return None


def _side(s: _Structure, start_darts, cut):
    """Faces reachable from the faces of ``start_darts`` without crossing an
    edge whose darts are in ``cut``."""
    seen = set()
    stack = [s.face[x] for x in start_darts]
    while stack:
        k = stack.pop()
        if k in seen:
            continue
        seen.add(k)
        for y in s.faces[k]:
            if y not in cut:
                stack.append(s.face[s.h.e[y]])
    return seen


# (interior nodes, sorted face sizes, degree of the interior node)
_QUAD_PATTERNS = {
    (0, (4,), None),
    (0, (3, 3), None),
    (1, (3, 3, 3, 3), 4),
    (1, (3, 3, 4), 3),
    (1, (4, 4), 2),
}


def _side_pattern(s: _Structure, faces, cycle):
    sizes = tuple(sorted(len(s.faces[k]) for k in faces))
    interior = {s.node[y] for k in faces for y in s.faces[k]} - set(cycle)
    if len(interior) > 1:
        return None
    deg = None
    if interior:
        (v0,) = interior
        deg = len(s.nbrs[v0])
        if not s.nbrs[v0] <= set(cycle):
            return None
    return (len(interior), sizes, deg)


def quad_cycle_ok(s: _Structure, cycle) -> bool:
    """Some choice of edges along the 4-cycle of nodes has a side whose
    faces match one of the four quadrilateral patterns."""
    hops = [s.edge_darts.get((cycle[i], cycle[(i + 1) % 4]), []) for i in range(4)]
    for xs in itertools.product(*hops):
        cut = set(xs) | {s.h.e[x] for x in xs}
        for start in (xs, [s.h.e[x] for x in xs]):
            faces = _side(s, start, cut)
            if _side_pattern(s, faces, cycle) in _QUAD_PATTERNS:
                return True
    return False


def four_cycles(s: _Structure):
    """4-cycles of distinct nodes, each listed once, starting from its least
    node with the smaller of the two neighbours second."""
    out = []
    for a in s.nbrs:
        for b in s.nbrs[a]:
            if b <= a:
                continue
            for c in s.nbrs[b]:
                if c <= a or c == b:
                    continue
                for d in s.nbrs[c] & s.nbrs[a]:
                    if d <= a or d in (b, c) or d < b:
                        continue
                    out.append((a, b, c, d))
    return out


def _quad_types(s: _Structure):
    for cyc in four_cycles(s):
        if not quad_cycle_ok(s, cyc):
            return f"4-cycle {cyc} matches no quadrilateral pattern"
    return None


def is_tame(h: Hypermap, *, epsilon: float = DEFAULT_EPSILON, weights: bool = True) -> TameReport:
    """Evaluate the eleven conditions.  Condition 11 is only evaluated when
    conditions 1 to 10 hold, since its LP presumes a structurally tame map."""
    rep = TameReport()

    def put(k, problem):
        rep.results[k] = problem is None
        if problem is not None:
            rep.details[k] = problem

    put(1, None if is_involutive(h) and is_planar(h) else "not involutive and planar")
    put(2, None if is_connected(h) else "not connected")
    s = _Structure(h)
    put(3, _simple_faces(s))
    n_nodes = len(s.nodes)
    put(4, None if n_nodes >= MIN_NODES else f"{n_nodes} nodes")
    bad_face = next((len(F) for F in s.faces if len(F) not in FACE_SIZES), None)
    put(5, None if bad_face is None else f"face of size {bad_face}")
    put(6, _triangle_types(s))
    put(7, _adjacent_400(s))
    put(8, _quad_types(s))
    bad9 = next((k for k, t in enumerate(s.types) if t.r > 0 and t.degree > 5), None)
    put(9, None if bad9 is None else f"node {bad9} of type {s.types[bad9]}")
    bad10 = next((k for k, t in enumerate(s.types) if t.degree not in DEGREES), None)
    put(10, None if bad10 is None else f"node {bad10} of degree {s.types[bad10].degree}")
    if weights and all(rep.results[k] for k in range(1, 11)):
        res = weight_feasible(h, epsilon)
        put(11, None if res.feasible else f"minimum total weight {res.total}")
    else:
        rep.results[11] = None
    return rep
