"""Voronoi weight assignments: exact checking and LP feasibility."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linprog

from ..hmap import Hypermap, NodeType, node_type
from .tables import SQUANDER_TARGET, b_pq, t_const

CONDITION2_BONUS = 0.016
DEFAULT_EPSILON = 1e-8


class WeightLPError(RuntimeError):
    pass


@dataclass(frozen=True)
class Constraint:
    """sum(coef[F] * w_F) > rhs, over face indices."""

    condition: int
    coef: tuple  # (face, multiplicity) pairs
    rhs: float
    where: str


def _node_of(h: Hypermap):
    return h.orbit_index("n")


def _face_of(h: Hypermap):
    return h.orbit_index("f")


def node_adjacency(h: Hypermap):
    """Set of frozenset pairs of distinct adjacent node indices."""
    node = _node_of(h)
    return {frozenset((node[x], node[h.e[x]])) for x in range(h.size) if node[x] != node[h.e[x]]}


def _independent_subsets(nodes, adj):
    nodes = sorted(nodes)
    for r in range(len(nodes) + 1):
        for sub in itertools.combinations(nodes, r):
            if all(frozenset(p) not in adj for p in itertools.combinations(sub, 2)):
                yield sub


def weight_constraints(h: Hypermap, b=b_pq):
    """The strict linear constraints of a Voronoi weight assignment, with one
    variable per face (faces in ``h.faces()`` order).  ``b(p, q)`` gives the
    node-sum bounds."""
    faces = h.faces()
    face = _face_of(h)
    node = _node_of(h)
    nodes = h.nodes()
    types = [node_type(h, k) for k in range(len(nodes))]
    adj = node_adjacency(h)
    out = []
    for k, F in enumerate(faces):
        m = len(F)
        out.append(Constraint(1, ((k, 1),), t_const(m), f"face {k} (size {m})"))
    special = {k for k, t in enumerate(types) if t == NodeType(4, 0, 1)}
    for k, F in enumerate(faces):
        m = len(F)
        if m < 5:
            continue
        meeting = sorted({node[x] for x in F} & special)
        dartset = set(F)
        for V in _independent_subsets(meeting, adj):
            if not V:
                continue  # the empty set repeats condition 1
            counts = {k: 1}
            for v in V:
                for x in nodes[v]:
                    if x not in dartset:
                        counts[face[x]] = counts.get(face[x], 0) + 1
            rhs = t_const(m) + CONDITION2_BONUS * len(V)
            out.append(Constraint(2, tuple(sorted(counts.items())), rhs, f"face {k}, nodes {list(V)}"))
    for v, t in enumerate(types):
        if t.r == 0:
            counts = {}
            for x in nodes[v]:
                counts[face[x]] = counts.get(face[x], 0) + 1
            out.append(Constraint(3, tuple(sorted(counts.items())), float(b(t.p, t.q)), f"node {v} type {(t.p, t.q, 0)}"))
    return out


def face_weights(h: Hypermap, w) -> list:
    """Per-face weights from a dart-indexed or face-indexed assignment.
    A dart assignment must be constant on faces."""
    faces = h.faces()
    w = list(w)
    if len(w) == len(faces):
        return [float(x) for x in w]
    if len(w) != h.size:
        raise ValueError("weights must be indexed by faces or by darts")
    out = []
    for F in faces:
        vals = {w[x] for x in F}
        if len(vals) != 1:
            raise ValueError(f"weight is not constant on face {F}")
        out.append(float(vals.pop()))
    return out


@dataclass
class WeightCheck:
    ok: bool
    violations: list = field(default_factory=list)  # (condition, where, lhs, rhs)


def is_voronoi_weight(h: Hypermap, w, b=b_pq) -> WeightCheck:
    """Check the three strict conditions exactly as stated (no slack)."""
    wf = face_weights(h, w)
    bad = []
    for c in weight_constraints(h, b):
        lhs = sum(mult * wf[k] for k, mult in c.coef)
        if not lhs > c.rhs:
            bad.append((c.condition, c.where, lhs, c.rhs))
    return WeightCheck(not bad, bad)


def total_weight(h: Hypermap, w) -> float:
    return float(sum(face_weights(h, w)))


@dataclass
class FeasibilityResult:
    feasible: bool
    weights: list | None  # per face, a minimum-total witness
    total: float | None
    cap: float


def weight_feasible(h: Hypermap, epsilon: float = DEFAULT_EPSILON, cap=None, b=b_pq) -> FeasibilityResult:
    """Is there a Voronoi weight assignment of total weight at most ``cap``?

    Each strict constraint lhs > rhs is relaxed to lhs >= rhs - epsilon, so
    the decision is never stricter than the exact one.  The LP minimises
    the total weight, which makes the answer monotone in ``cap``."""
    cap = float(SQUANDER_TARGET) if cap is None else float(cap)
    nf = len(h.faces())
    rows, rhs = [], []
    cons = weight_constraints(h, b)
    for c in cons:
        row = np.zeros(nf)
        for k, mult in c.coef:
            row[k] -= mult
        rows.append(row)
        rhs.append(-(c.rhs - epsilon))
    res = linprog(
        np.ones(nf),
        A_ub=np.array(rows) if rows else None,
        b_ub=np.array(rhs) if rows else None,
        bounds=[(None, None)] * nf,
        method="highs",
    )
    if res.status == 2:
        return FeasibilityResult(False, None, None, cap)
    if res.status != 0:
        raise WeightLPError(f"weight LP failed: {res.message}")
    total = float(res.fun)
    ok = total <= cap + epsilon
    return FeasibilityResult(ok, [float(x) for x in res.x], total, cap)
