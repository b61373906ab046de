"""Seed-and-extend enumeration of planar maps with bounded faces and degrees.

A partial map is a simple plane graph whose faces are all simple cycles;
each face is final or temporary.  A seed fixes node 0 and the cyclic
sequence of face sizes around it; node 0 is completed first.  Extending a
partial picks a dart (u0, u1) of a temporary face T and adds, in every
admissible way, the final face F inside T on the left of that dart.  The vertices of F
after u1 are new vertices or vertices of T met in boundary order.  What is
left of T splits into new temporary faces.  A map is complete when no
temporary face remains.

Node 0 is taken to be a node of largest key (degree, face-size bracelet),
so a partial is discarded as soon as some node beats node 0.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from ..hmap import Hypermap, canonical_form, from_face_list
from ..tame.tables import SQUANDER_TARGET, b_pq, t_const


class InvalidParams(ValueError):
    pass


class ResourceBudgetExceeded(RuntimeError):
    """The node budget ran out; ``state`` resumes the search."""

    def __init__(self, msg, state):
        super().__init__(msg)
        self.state = state


@dataclass(frozen=True)
class GenParams:
    max_nodes: int
    min_nodes: int = 13
    face_sizes: tuple = (3, 4, 5, 6, 7)
    min_degree: int = 2
    max_degree: int = 6
    squander: bool = True  # prune on the squander lower bound
    tame_filters: bool = True  # no adjacent (4,0,0) nodes; degree <= 5 next to big faces
    target: float = float(SQUANDER_TARGET)

    def __post_init__(self):
        sizes = tuple(sorted(set(int(k) for k in self.face_sizes)))
        object.__setattr__(self, "face_sizes", sizes)
        if not sizes or sizes[0] < 3:
            raise InvalidParams("face sizes must be >= 3")
        if self.min_degree < 2:
            raise InvalidParams("min_degree must be >= 2")
        if self.max_nodes < 1 or self.min_nodes > self.max_nodes:
            raise InvalidParams("need 1 <= min_nodes <= max_nodes")


def bracelet_key(seq):
    """Largest rotation or reflection of a cyclic sequence."""
    seq = tuple(seq)
    n = len(seq)
    rots = [seq[i:] + seq[:i] for i in range(n)]
    rev = seq[::-1]
    rots += [rev[i:] + rev[:i] for i in range(n)]
    return max(rots)


def node_key(sizes):
    return (len(sizes), bracelet_key(sizes))


@dataclass(frozen=True)
class Partial:
    final: tuple  # final faces as vertex cycles
    temp: tuple  # temporary faces as vertex cycles
    nv: int  # vertices are 0 .. nv-1
    deg: tuple  # faces (= edges) at each vertex
    tcount: tuple  # temporary faces at each vertex
    edges: frozenset
    seed_key: tuple  # (degree, planned face sizes) of node 0
    tsum: float = 0.0  # sum of t over final faces
    types: tuple = ()  # (p, q, r) of finished vertices, None elsewhere
    excess: tuple = ()  # (b - sum t, vertex, final face indices) of finished (p, q, 0) nodes
    fresh: tuple = ()  # (vertex, sizes in rotation order) finished by the last step

    def is_complete(self) -> bool:
        return not self.temp

    def face_list(self):
        return [list(f) for f in self.final]


def _edges_of(face):
    k = len(face)
    out = set()
    for i in range(k):
        a, b = face[i], face[(i + 1) % k]
        out.add((a, b) if a < b else (b, a))
    return out


def _ordered_faces(v, faces):
    """Faces at v in rotation order: after f comes the face holding the
    dart from v to its predecessor in f."""
    by_out = {}
    for f in faces:
        i = f.index(v)
        by_out[f[(i + 1) % len(f)]] = f
    order = [faces[0]]
    while True:
        f = order[-1]
        g = by_out[f[f.index(v) - 1]]
        if g is faces[0]:
            return order
        order.append(g)


def _finish(final, v):
    """(sizes in rotation order, face indices) of a vertex with only final faces."""
    idx = [i for i, f in enumerate(final) if v in f]
    faces = _ordered_faces(v, [final[i] for i in idx])
    return tuple(len(f) for f in faces), frozenset(idx)


def _excess(sizes):
    if any(k > 4 for k in sizes):
        return None
    ex = b_pq(sizes.count(3), sizes.count(4)) - sum(t_const(k) for k in sizes)
    return ex if ex > 0 else None


def _node_type(sizes):
    p, q = sizes.count(3), sizes.count(4)
    return (p, q, len(sizes) - p - q)


def _make(final, temp, nv, seed_key) -> Partial:
    deg = [0] * nv
    tc = [0] * nv
    edges = set()
    for f in final:
        for v in f:
            deg[v] += 1
        edges |= _edges_of(f)
    for f in temp:
        for v in f:
            deg[v] += 1
            tc[v] += 1
        edges |= _edges_of(f)
    types = [None] * nv
    excess = []
    fresh = []
    for v in range(nv):
        if deg[v] and not tc[v]:
            sizes, idx = _finish(final, v)
            types[v] = _node_type(sizes)
            fresh.append((v, sizes))
            ex = _excess(sizes)
            if ex is not None:
                excess.append((ex, v, idx))
    return Partial(
        tuple(final), tuple(temp), nv, tuple(deg), tuple(tc), frozenset(edges), seed_key,
        sum(t_const(len(f)) for f in final), tuple(types), tuple(excess), tuple(fresh),
    )


def seed_partial(plan) -> Partial:
    """Node 0 with the planned cyclic sequence of face sizes around it.  Only
    the first face is laid down; the others are added at node 0 first, in
    order, by extension, which lets them share vertices."""
    plan = tuple(plan)
    face = tuple(range(plan[0]))
    return _make((face,), (face[::-1],), plan[0], (len(plan), plan))


def seeds(params: GenParams):
    """One seed per admissible node configuration: a degree and a cyclic
    sequence of face sizes up to rotation and reflection."""
    out = []
    for d in range(max(params.min_degree, 2), params.max_degree + 1):
        seen = set()
        for seq in itertools.product(params.face_sizes, repeat=d):
            key = bracelet_key(seq)
            if key in seen:
                continue
            seen.add(key)
            if params.tame_filters and d > 5 and max(key) >= 5:
                continue
            if key[0] > params.max_nodes:
                continue
            out.append(seed_partial(key))
    return out


# extension


def choose_dart(ph: Partial):
    """(temp face index, rotation) of the dart to extend: node 0 while it is
    unfinished, else the temporary vertex of largest degree, smallest label
    on ties, in the first temporary face holding it."""
    best = 0 if ph.tcount[0] else None
    for v in range(ph.nv if best is None else 0):
        if ph.tcount[v] and (best is None or ph.deg[v] > ph.deg[best]):
            best = v
    for ti, f in enumerate(ph.temp):
        if best in f:
            return ti, f.index(best)
    raise ValueError("partial has no temporary face")


def _patterns(L, slots):
    """Sequences of length ``slots`` over NEW (-1) and increasing boundary
    indices in 2 .. L-1."""

    def rec(pos, left):
        if left == 0:
            yield ()
            return
        for rest in rec(pos, left - 1):
            yield (-1,) + rest
        for j in range(pos + 1, L):
            for rest in rec(j, left - 1):
                yield (j,) + rest

    yield from rec(1, slots)


def children_faces(ph: Partial, params: GenParams, ti=None, rot=None):
    """Each admissible final face F for the chosen dart, as
    (F, new temporary faces, new vertex count)."""
    if ti is None:
        ti, rot = choose_dart(ph)
    T = ph.temp[ti]
    T = T[rot:] + T[:rot]
    L = len(T)
    room = params.max_nodes - ph.nv
    sizes = params.face_sizes
    if T[0] == 0:
        d, plan = ph.seed_key
        done = ph.deg[0] - ph.tcount[0]
        sizes = (plan[done],) if done < d else ()
    out = []
    for k in sizes:
        if params.squander and ph.tsum + t_const(k) > params.target:
            continue
        for pat in _patterns(L, k - 2):
            n_new = pat.count(-1)
            if n_new > room:
                continue
            seq = (0, 1) + pat  # boundary indices, -1 for a new vertex
            ok = True
            # edges between consecutive existing vertices of F
            for a, b in zip(seq, seq[1:] + (0,)):
                if a < 0 or b < 0:
                    continue
                if b == (a + 1) % L:
                    continue
                e = (min(T[a], T[b]), max(T[a], T[b]))
                if e in ph.edges:
                    ok = False
                    break
            if not ok:
                continue
            nv = ph.nv
            F = []
            for s in seq:
                if s >= 0:
                    F.append(T[s])
                else:
                    F.append(nv)
                    nv += 1
            # leftover temporary faces between consecutive boundary visits
            bidx = [i for i, s in enumerate(seq) if s >= 0]
            temps = []
            for t, i in enumerate(bidx):
                j_pos = bidx[t + 1] if t + 1 < len(bidx) else len(seq)
                a = seq[i]
                b = seq[j_pos] if j_pos < len(seq) else L
                run = F[i + 1:j_pos]
                if b == a + 1 and not run:
                    continue
                arc = [T[x % L] for x in range(a, b + 1)]
                temps.append(tuple(arc + run[::-1]))
            out.append((tuple(F), tuple(temps), nv - ph.nv))
    return out, ti


def apply_child(ph: Partial, ti, F, temps, n_new) -> Partial:
    T = ph.temp[ti]
    deg = list(ph.deg) + [0] * n_new
    tc = list(ph.tcount) + [0] * n_new
    for v in T:
        deg[v] -= 1
        tc[v] -= 1
    for v in F:
        deg[v] += 1
    for f in temps:
        for v in f:
            deg[v] += 1
            tc[v] += 1
    final = ph.final + (F,)
    types = list(ph.types) + [None] * n_new
    excess = list(ph.excess)
    fresh = []
    for v in F:
        if not tc[v]:
            sizes, idx = _finish(final, v)
            types[v] = _node_type(sizes)
            fresh.append((v, sizes))
            ex = _excess(sizes)
            if ex is not None:
                excess.append((ex, v, idx))
    return Partial(
        final, ph.temp[:ti] + ph.temp[ti + 1:] + temps, ph.nv + n_new,
        tuple(deg), tuple(tc), ph.edges | _edges_of(F), ph.seed_key,
        ph.tsum + t_const(len(F)), tuple(types), tuple(excess), tuple(fresh),
    )


# pruning


def squander_bound(ph: Partial) -> float:
    """Sound lower bound on the total weight of any completion: t over final
    faces plus node excesses b(p,q) - sum t over face-disjoint finished
    (p,q,0) nodes, taken greedily by largest excess."""
    total = ph.tsum
    used = set()
    for ex, v, idx in sorted(ph.excess, key=lambda c: (-c[0], c[1])):
        if used.isdisjoint(idx):
            used |= idx
            total += ex
    return total


def prune_reason(ph: Partial, params: GenParams, changed=None):
    """None to keep the partial, else why it cannot complete to a map in
    the target class with node 0 as its seed node.  ``changed`` limits the
    per-vertex checks to the vertices touched by the last step; finished
    vertices are those in ``ph.fresh``."""
    if ph.nv > params.max_nodes:
        return "too many nodes"
    if changed is None:
        bad = next((len(f) for f in ph.final if len(f) not in params.face_sizes), None)
        if bad is not None:
            return f"final face of size {bad}"
    d0 = ph.seed_key[0]
    done0 = ph.deg[0] - ph.tcount[0]
    if (done0 != d0) if not ph.tcount[0] else (done0 >= d0):
        return "node 0 does not follow its plan"
    for v in range(ph.nv) if changed is None else changed:
        if ph.deg[v] > d0:
            return f"node {v} degree {ph.deg[v]}"
    for v, sizes in ph.fresh:
        if len(sizes) < params.min_degree:
            return f"finished node {v} degree {len(sizes)}"
        if node_key(sizes) > ph.seed_key:
            return f"node {v} outranks the seed node"
        if params.tame_filters:
            p, q, r = ph.types[v]
            if r > 0 and p + q + r > 5:
                return f"node {v} type {(p, q, r)}"
            if (p, q, r) == (4, 0, 0):
                for a, b in ph.edges:
                    w = b if a == v else a if b == v else None
                    if w is not None and ph.types[w] == (4, 0, 0):
                        return f"adjacent (4,0,0) nodes {v}, {w}"
    if params.squander and squander_bound(ph) > params.target:
        return "squander bound exceeds the target"
    return None


def extend(ph: Partial, params: GenParams):
    """Children of ``ph`` that survive pruning, in deterministic order."""
    faces, ti = children_faces(ph, params)
    out = []
    for F, temps, n_new in faces:
        child = apply_child(ph, ti, F, temps, n_new)
        if prune_reason(child, params, F) is None:
            out.append(child)
    return out


def accept(ph: Partial, params: GenParams) -> bool:
    return ph.is_complete() and ph.nv >= params.min_nodes


# the search


@dataclass
class SearchState:
    stack: list
    found: dict = field(default_factory=dict)  # canonical form -> face list
    visited: int = 0


def initial_state(params: GenParams) -> SearchState:
    stack = [s for s in seeds(params) if prune_reason(s, params) is None]
    stack.reverse()
    return SearchState(stack)


def run(state: SearchState, params: GenParams, budget=None) -> SearchState:
    """Depth-first search; raises ResourceBudgetExceeded (with the state to
    resume from) after ``budget`` partials."""
    start = state.visited
    while state.stack:
        if budget is not None and state.visited - start >= budget:
            raise ResourceBudgetExceeded(f"node budget {budget} exhausted", state)
        ph = state.stack.pop()
        state.visited += 1
        if ph.is_complete():
            if accept(ph, params):
                h = from_face_list(ph.face_list())
                key = canonical_form(h, allow_improper=True)
                state.found.setdefault(key, ph.face_list())
            continue
        kids = extend(ph, params)
        state.stack.extend(reversed(kids))
    return state


def enumerate_maps(params: GenParams, budget=None, resume: SearchState | None = None):
    """Isomorphism classes (proper or improper) of complete maps, as face
    lists in order of discovery."""
    state = resume if resume is not None else initial_state(params)
    run(state, params, budget)
    return list(state.found.values())


def to_hypermaps(face_lists):
    return [from_face_list(f) for f in face_lists]


def is_emittable(h: Hypermap) -> bool:
    from ..hmap import is_connected, is_involutive, is_planar

    faces = h.faces()
    node = h.orbit_index("n")
    simple = all(len({node[x] for x in f}) == len(f) for f in faces)
    return is_involutive(h) and is_planar(h) and is_connected(h) and simple


# replay of one target map along the generator's path


@dataclass
class ReplayResult:
    ok: bool
    steps: int
    reason: str | None = None
    mirrored: bool = False
    path: list = field(default_factory=list)  # partials visited, when asked for


def _rotation(faces, v, start):
    """Faces at v in the generator's rotation order, starting at ``start``."""
    by_out = {}
    for f in faces:
        if v in f:
            i = f.index(v)
            by_out[f[(i + 1) % len(f)]] = f
    order = [start]
    while True:
        f = order[-1]
        g = by_out[f[f.index(v) - 1]]
        if g is start:
            return order
        order.append(g)


def _seed_choice(faces):
    """(vertex, first face) realising the largest node key with the planned
    orientation, or None if only the mirror image does."""
    verts = sorted({v for f in faces for v in f})
    best = None
    for v in verts:
        start = next(f for f in faces if v in f)
        sizes = tuple(len(f) for f in _rotation(faces, v, start))
        key = node_key(sizes)
        if best is None or key > best[0]:
            best = (key, v)
    key, v = best
    plan = key[1]
    start = next(f for f in faces if v in f)
    ring = _rotation(faces, v, start)
    for i in range(len(ring)):
        if tuple(len(f) for f in ring[i:] + ring[:i]) == plan:
            return v, ring[i], key
    return None


def replay(faces, params: GenParams, keep_path: bool = False) -> ReplayResult:
    """Follow the generator's choices towards one given map (a face list)
    and report the first step at which it is missing or pruned."""
    faces = [tuple(f) for f in faces]
    mirrored = False
    choice = _seed_choice(faces)
    if choice is None:
        faces = [f[::-1] for f in faces]
        mirrored = True
        choice = _seed_choice(faces)
    v0, f0, key = choice
    if key[0] < max(params.min_degree, 2) or key[0] > params.max_degree:
        return ReplayResult(False, 0, f"seed degree {key[0]} out of range", mirrored)
    i = f0.index(v0)
    f0 = f0[i:] + f0[:i]
    ph = seed_partial(key[1])
    to_target = dict(enumerate(f0))
    why = prune_reason(ph, params)
    if why is not None:
        return ReplayResult(False, 0, f"seed pruned: {why}", mirrored)
    out_dart = {}
    for f in faces:
        for j in range(len(f)):
            out_dart[(f[j], f[(j + 1) % len(f)])] = f
    steps = 0
    path = [ph] if keep_path else []
    while ph.temp:
        ti, rot = choose_dart(ph)
        T = ph.temp[ti]
        T = T[rot:] + T[:rot]
        a, b = to_target[T[0]], to_target[T[1]]
        G = out_dart.get((a, b))
        if G is None:
            return ReplayResult(False, steps, f"no face on dart {(a, b)}", mirrored)
        j = G.index(a)
        G = G[j:] + G[:j]
        from_target = {t: g for g, t in to_target.items()}
        want, nv = [], ph.nv
        new = []
        for t in G:
            if t in from_target:
                want.append(from_target[t])
            else:
                want.append(nv)
                new.append((nv, t))
                nv += 1
        kids, _ = children_faces(ph, params, ti, rot)
        match = next((c for c in kids if c[0] == tuple(want)), None)
        steps += 1
        if match is None:
            return ReplayResult(False, steps, f"face {G} is not among the children", mirrored)
        ph = apply_child(ph, ti, *match)
        if keep_path:
            path.append(ph)
        to_target.update(new)
        why = prune_reason(ph, params, match[0])
        if why is not None:
            return ReplayResult(False, steps, f"pruned: {why}", mirrored)
    if len(ph.final) != len(faces):
        return ReplayResult(False, steps, "closed before covering the map", mirrored)
    if not accept(ph, params):
        return ReplayResult(False, steps, "complete but below min_nodes", mirrored)
    return ReplayResult(True, steps, None, mirrored, path)
