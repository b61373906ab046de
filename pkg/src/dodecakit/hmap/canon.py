"""Canonical forms and isomorphism of hypermaps.

Each connected component is coded by the least breadth-first relabeling
(see ``kernels.canonical_code``) over start darts whose (face length, node
degree) is least; the code determines f and n, hence the component up to
isomorphism.  A map's form is the sorted tuple of its component codes.
"""

from __future__ import annotations

from .. import kernels
from .hypermap import Hypermap, face_size_of, mirror


def _node_size_of(h: Hypermap):
    def build():
        out = [0] * h.size
        for node in h.nodes():
            for x in node:
                out[x] = len(node)
        return tuple(out)

    return h._cached("nsize", build)


def _component_code(h: Hypermap, comp) -> tuple:
    fs, ns = face_size_of(h), _node_size_of(h)
    key = min((fs[x], ns[x]) for x in comp)
    starts = [x for x in comp if (fs[x], ns[x]) == key]
    code, _ = kernels.canonical_code(h.f, h.n, starts, len(comp))
    return (len(comp),) + key + tuple(code)


def _proper_form(h: Hypermap) -> tuple:
    return h._cached("canon", lambda: tuple(sorted(_component_code(h, c) for c in h.components())))


def canonical_form(h: Hypermap, allow_improper: bool = False) -> tuple:
    """Label sequence equal for two maps iff they are properly isomorphic
    (or, with ``allow_improper``, isomorphic to each other or a mirror)."""
    form = _proper_form(h)
    if allow_improper:
        form = min(form, _proper_form(mirror(h)))
    return form


def is_isomorphic(h1: Hypermap, h2: Hypermap, allow_improper: bool = False) -> bool:
    if h1.size != h2.size:
        return False
    if (len(h1.faces()), len(h1.nodes()), len(h1.edges())) != (len(h2.faces()), len(h2.nodes()), len(h2.edges())):
        return False
    f1 = _proper_form(h1)
    if f1 == _proper_form(h2):
        return True
    return allow_improper and f1 == _proper_form(mirror(h2))


def is_chiral(h: Hypermap) -> bool:
    """True when the map is not properly isomorphic to its mirror."""
    return not is_isomorphic(h, mirror(h))
