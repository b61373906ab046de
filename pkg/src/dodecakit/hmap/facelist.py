"""Face lists: the planar-graph view of an involutive hypermap.

A face is a cycle of vertices listed counterclockwise.  Each consecutive pair
(v, w) of a face is a dart; f steps to the next pair of the same face, e
reverses the pair, and n = e f^-1 turns around the tail vertex.

Text format, one map per line::

    <face_count> <len> v1 v2 ... <len> v1 ...
"""

from __future__ import annotations

from .hypermap import Hypermap, InconsistentFaceList


def from_face_list(faces) -> Hypermap:
    faces = [list(face) for face in faces]
    if not faces:
        raise InconsistentFaceList("empty face list")
    dart_of = {}
    tails = []
    f = []
    for face in faces:
        k = len(face)
        if k < 2:
            raise InconsistentFaceList(f"face {face} is too short")
        base = len(tails)
        for i in range(k):
            v, w = face[i], face[(i + 1) % k]
            if v == w:
                raise InconsistentFaceList(f"loop at vertex {v!r}")
            if (v, w) in dart_of:
                raise InconsistentFaceList(f"directed edge {v!r}->{w!r} appears twice")
            dart_of[(v, w)] = len(tails)
            tails.append(v)
            f.append(base + (i + 1) % k)
    heads = {x: (tails[x], tails[f[x]]) for x in range(len(tails))}
    e = [0] * len(tails)
    for x, (v, w) in heads.items():
        y = dart_of.get((w, v))
        if y is None:
            raise InconsistentFaceList(f"directed edge {w!r}->{v!r} is missing")
        e[x] = y
    f_inv = [0] * len(f)
    for x, y in enumerate(f):
        f_inv[y] = x
    n = [e[f_inv[x]] for x in range(len(f))]
    h = Hypermap(e, n, f, tails)
    seen = set()
    for node in h.nodes():
        v = tails[node[0]]
        if v in seen:
            raise InconsistentFaceList(f"vertex {v!r} is not a single node (pinched)")
        seen.add(v)
    return h


def to_face_list(h: Hypermap):
    """Faces as vertex cycles; vertices are the tail labels when the map
    carries them, otherwise node indices."""
    tails = h.tails if h.tails is not None else h.orbit_index("n")
    return [[tails[x] for x in face] for face in h.faces()]


def parse_face_list(line: str):
    tok = line.split()
    if not tok:
        raise InconsistentFaceList("empty line")
    try:
        vals = [int(t) for t in tok]
    except ValueError as exc:
        raise InconsistentFaceList(f"non-integer token in {line!r}") from exc
    count, pos, faces = vals[0], 1, []
    for _ in range(count):
        if pos >= len(vals):
            raise InconsistentFaceList("truncated face list")
        k = vals[pos]
        face = vals[pos + 1:pos + 1 + k]
        if len(face) != k:
            raise InconsistentFaceList("truncated face")
        faces.append(face)
        pos += 1 + k
    if pos != len(vals):
        raise InconsistentFaceList("trailing tokens after the last face")
    return faces


def format_face_list(faces) -> str:
    parts = [str(len(faces))]
    for face in faces:
        parts.append(str(len(face)))
        parts.extend(str(v) for v in face)
    return " ".join(parts)


def read_face_lists(lines):
    """Face lists from text lines; blank lines and '#' comments are skipped."""
    out = []
    for ln in lines:
        ln = ln.split("#", 1)[0].strip()
        if ln:
            out.append(parse_face_list(ln))
    return out
