"""Hypermaps on dense darts 0..N-1."""

from __future__ import annotations

from dataclasses import dataclass


class InvalidHypermap(ValueError):
    pass


class InconsistentFaceList(ValueError):
    """A directed edge is missing from, or repeated in, a face list."""


def _check_perm(p, n, name):
    if len(p) != n or sorted(p) != list(range(n)):
        raise InvalidHypermap(f"{name} is not a permutation of 0..{n - 1}")


def inverse(p):
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(inv)


def cycles(p):
    """Cycles of a permutation, each starting at its smallest element, in
    order of that element."""
    seen = [False] * len(p)
    out = []
    for start in range(len(p)):
        if seen[start]:
            continue
        cyc = []
        x = start
        while not seen[x]:
            seen[x] = True
            cyc.append(x)
            x = p[x]
        out.append(cyc)
    return out


@dataclass(frozen=True)
class NodeType:
    p: int  # triangles at the node
    q: int  # quadrilaterals
    r: int  # other faces

    @property
    def degree(self) -> int:
        return self.p + self.q + self.r


class Hypermap:
    """Permutations e, n, f of the darts with e(n(f(x))) = x for every dart.

    ``tails`` optionally names the vertex at the tail of each dart, which
    :func:`to_face_list` uses to reproduce the face list a map came from.
    """

    __slots__ = ("e", "n", "f", "tails", "_cache")

    def __init__(self, e, n, f, tails=None, *, check=True):
        self.e = tuple(int(x) for x in e)
        self.n = tuple(int(x) for x in n)
        self.f = tuple(int(x) for x in f)
        self.tails = None if tails is None else tuple(tails)
        self._cache = {}
        if check:
            N = len(self.e)
            for name in ("e", "n", "f"):
                _check_perm(getattr(self, name), N, name)
            if self.tails is not None and len(self.tails) != N:
                raise InvalidHypermap("one tail label per dart is required")
            bad = next((x for x in range(N) if self.e[self.n[self.f[x]]] != x), None)
            if bad is not None:
                raise InvalidHypermap(f"e(n(f({bad}))) != {bad}")

    @classmethod
    def from_nf(cls, n, f, tails=None) -> "Hypermap":
        """Build from n and f; e is then forced to be (n f)^-1."""
        nf = [n[f[x]] for x in range(len(f))]
        return cls(inverse(nf), n, f, tails)

    @property
    def size(self) -> int:
        return len(self.e)

    def __len__(self):
        return len(self.e)

    def __eq__(self, other):
        return isinstance(other, Hypermap) and (self.e, self.n, self.f) == (other.e, other.n, other.f)

    def __hash__(self):
        return hash((self.e, self.n, self.f))

    def __repr__(self):
        return f"Hypermap(N={self.size}, faces={len(self.faces())}, nodes={len(self.nodes())})"

    def _cached(self, key, fn):
        if key not in self._cache:
            self._cache[key] = fn()
        return self._cache[key]

    def perm(self, which: str):
        return {"e": self.e, "n": self.n, "f": self.f}[which]

    def faces(self):
        return self._cached("f", lambda: cycles(self.f))

    def nodes(self):
        return self._cached("n", lambda: cycles(self.n))

    def edges(self):
        return self._cached("e", lambda: cycles(self.e))

    def components(self):
        return self._cached("group", self._components)

    def _components(self):
        N = self.size
        comp = [-1] * N
        out = []
        for s in range(N):
            if comp[s] >= 0:
                continue
            k = len(out)
            comp[s] = k
            stack, members = [s], [s]
            while stack:
                x = stack.pop()
                for y in (self.e[x], self.n[x], self.f[x]):
                    if comp[y] < 0:
                        comp[y] = k
                        stack.append(y)
                        members.append(y)
            out.append(sorted(members))
        return out

    def orbit_index(self, which: str):
        """Map dart -> index of its orbit in ``orbits(which)``."""

        def build():
            idx = [0] * self.size
            for k, orb in enumerate(orbits(self, which)):
                for x in orb:
                    idx[x] = k
            return tuple(idx)

        return self._cached(("idx", which), build)


def orbits(h: Hypermap, which: str):
    """Orbits of e, n, f or of the whole group ("group"), as sorted lists of
    darts ordered by their smallest dart."""
    if which == "f":
        return h.faces()
    if which == "n":
        return h.nodes()
    if which == "e":
        return h.edges()
    if which == "group":
        return h.components()
    raise ValueError(f"unknown orbit kind {which!r}")


def is_involutive(h: Hypermap) -> bool:
    return all(h.e[h.e[x]] == x for x in range(h.size))


def is_planar(h: Hypermap) -> bool:
    lhs = len(h.edges()) + len(h.nodes()) + len(h.faces())
    return lhs == h.size + 2 * len(h.components())


def is_connected(h: Hypermap) -> bool:
    return len(h.components()) == 1


def mirror(h: Hypermap) -> Hypermap:
    """The mirror image (D, f n, n^-1, f^-1)."""
    fn = tuple(h.f[h.n[x]] for x in range(h.size))
    return Hypermap(fn, inverse(h.n), inverse(h.f), h.tails)


def relabel(h: Hypermap, sigma) -> Hypermap:
    """Conjugate by the dart bijection x -> sigma[x]."""
    N = h.size
    out = {}
    for name in ("e", "n", "f"):
        p = h.perm(name)
        q = [0] * N
        for x in range(N):
            q[sigma[x]] = sigma[p[x]]
        out[name] = q
    tails = None
    if h.tails is not None:
        tails = [None] * N
        for x in range(N):
            tails[sigma[x]] = h.tails[x]
    return Hypermap(out["e"], out["n"], out["f"], tails)


def disjoint_union(a: Hypermap, b: Hypermap) -> Hypermap:
    k = a.size
    tails = None
    if a.tails is not None and b.tails is not None:
        tails = tuple((0, t) for t in a.tails) + tuple((1, t) for t in b.tails)
    return Hypermap(
        a.e + tuple(x + k for x in b.e),
        a.n + tuple(x + k for x in b.n),
        a.f + tuple(x + k for x in b.f),
        tails,
    )


def face_size_of(h: Hypermap):
    """Dart -> length of its face."""

    def build():
        out = [0] * h.size
        for face in h.faces():
            for x in face:
                out[x] = len(face)
        return tuple(out)

    return h._cached("fsize", build)


def node_type(h: Hypermap, node: int) -> NodeType:
    """Type of the node with index ``node`` in ``orbits(h, "n")``."""
    sizes = face_size_of(h)
    p = q = r = 0
    for x in h.nodes()[node]:
        s = sizes[x]
        if s == 3:
            p += 1
        elif s == 4:
            q += 1
        else:
            r += 1
    return NodeType(p, q, r)
