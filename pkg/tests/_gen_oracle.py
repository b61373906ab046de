"""Brute-force enumerators of plane maps used to check the generator.

Both work on face lists of 2-connected simple plane graphs and share
nothing with the generator beyond the canonical form."""

from collections import Counter

from dodecakit.hmap import canonical_form, from_face_list


def _key(faces):
    return canonical_form(from_face_list(faces), allow_improper=True)


def _edges(faces):
    out = set()
    for f in faces:
        for i in range(len(f)):
            a, b = f[i], f[(i + 1) % len(f)]
            out.add((min(a, b), max(a, b)))
    return out


def _degrees(faces):
    return Counter(v for f in faces for v in f)


def ear_closure(max_nodes, max_edges):
    """All 2-connected simple plane graphs with at most ``max_nodes``
    vertices and ``max_edges`` edges, grown from cycles by adding one ear
    (a path through a face between two of its vertices) at a time."""
    seen = {}
    frontier = []
    for k in range(3, max_nodes + 1):
        faces = [list(range(k)), list(range(k))[::-1]]
        key = _key(faces)
        if key not in seen:
            seen[key] = faces
            frontier.append(faces)
    while frontier:
        nxt = []
        for faces in frontier:
            nv = 1 + max(v for f in faces for v in f)
            edges = _edges(faces)
            for fi, f in enumerate(faces):
                L = len(f)
                for i in range(L):
                    for j in range(L):
                        if i == j:
                            continue
                        # walk f from f[i] to f[j] on one side, back along the ear
                        for inner in range(0, max_nodes - nv + 1):
                            if len(edges) + inner + 1 > max_edges:
                                break
                            a, b = f[i], f[j]
                            if inner == 0 and ((min(a, b), max(a, b)) in edges):
                                continue
                            if i > j:
                                continue  # each split once: the other side comes with (j, i)
                            path = list(range(nv, nv + inner))
                            side1 = [f[(i + s) % L] for s in range((j - i) % L + 1)] + path[::-1]
                            side2 = [f[(j + s) % L] for s in range((i - j) % L + 1)] + path
                            new = faces[:fi] + faces[fi + 1:] + [side1, side2]
                            key = _key(new)
                            if key not in seen:
                                seen[key] = new
                                nxt.append(new)
        frontier = nxt
    return list(seen.values())


def filtered(maps, sizes, min_deg, max_deg, min_nodes=1):
    out = []
    for faces in maps:
        deg = _degrees(faces)
        if len(deg) < min_nodes:
            continue
        if all(len(f) in sizes for f in faces) and all(min_deg <= d <= max_deg for d in deg.values()):
            out.append(faces)
    return out


def flip_closure(n):
    """All simple triangulations of the sphere with n >= 4 vertices, as the
    closure of one of them under simplicity-preserving edge flips."""
    # start: a double pyramid over an (n-2)-gon
    m = n - 2
    faces = [[0, 1, 2], [0, 2, 3], [0, 3, 1], [1, 3, 2]] if n == 4 else []
    for i in range(m if n > 4 else 0):
        a, b = i, (i + 1) % m
        faces.append([a, b, m])
        faces.append([b, a, m + 1])
    seen = {_key(faces): faces}
    stack = [faces]
    while stack:
        faces = stack.pop()
        edges = _edges(faces)
        where = {}
        for k, f in enumerate(faces):
            for i in range(3):
                where[(f[i], f[(i + 1) % 3])] = k
        for a, b in edges:
            k1, k2 = where[(a, b)], where[(b, a)]
            c = next(v for v in faces[k1] if v not in (a, b))
            d = next(v for v in faces[k2] if v not in (a, b))
            if (min(c, d), max(c, d)) in edges or c == d:
                continue
            new = [f for k, f in enumerate(faces) if k not in (k1, k2)]
            # (a, b, c) and (b, a, d) become (c, d, b) and (d, c, a)
            new += [[c, d, b], [d, c, a]]
            if min(_degrees(new).values()) < 3:
                continue
            key = _key(new)
            if key not in seen:
                seen[key] = new
                stack.append(new)
    return list(seen.values())


def hole_fill(max_nodes, lo, hi, min_nodes=4):
    """Triangulations with min_nodes..max_nodes vertices and all degrees in
    [lo, hi]: start from one triangle and fill the holes left behind, one
    triangle at a time on an edge at the busiest hole vertex."""
    seen = {}

    def rec(tris, holes, nv, nbrs):
        if not holes:
            if nv >= min_nodes and all(lo <= len(s) <= hi for s in nbrs):
                key = _key(tris)
                seen.setdefault(key, [list(t) for t in tris])
            return
        on_hole = set(v for h in holes for v in h)
        for v in range(nv):
            if len(nbrs[v]) > hi or (v not in on_hole and len(nbrs[v]) < lo):
                return
        v = max(on_hole, key=lambda x: (len(nbrs[x]), -x))
        hi_ = next(i for i, h in enumerate(holes) if v in h)
        h = holes[hi_]
        i = h.index(v)
        h = h[i:] + h[:i]
        rest = holes[:hi_] + holes[hi_ + 1:]
        L = len(h)
        a, b = h[0], h[1]
        if nv < max_nodes:
            x = nv
            new_nbrs = [set(s) for s in nbrs] + [{a, b}]
            new_nbrs[a].add(x)
            new_nbrs[b].add(x)
            rec(tris + [(a, b, x)], rest + [h[1:] + [a, x]], nv + 1, new_nbrs)
        for j in range(2, L):
            c = h[j]
            if j != 2 and c in nbrs[b]:
                continue
            if j != L - 1 and c in nbrs[a]:
                continue
            new_nbrs = [set(s) for s in nbrs]
            new_nbrs[b].add(c)
            new_nbrs[c].add(b)
            new_nbrs[a].add(c)
            new_nbrs[c].add(a)
            parts = []
            if j > 2:
                parts.append(h[1:j + 1])
            if j < L - 1:
                parts.append(h[j:] + [a])
            rec(tris + [(a, b, c)], rest + parts, nv, new_nbrs)

    rec([(0, 1, 2)], [[0, 2, 1]], 3, [{1, 2}, {0, 2}, {0, 1}])
    return list(seen.values())
