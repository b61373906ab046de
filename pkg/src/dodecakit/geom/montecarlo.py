"""Monte-Carlo volume estimates used as independent oracles.

Each function samples the region straight from its set-theoretic definition
and returns ``(estimate, standard_error)``.  None of them uses the closed-form
formulas of this package.
"""

from __future__ import annotations

import numpy as np


def _ball_samples(rng, n, radius):
    pts = rng.uniform(-radius, radius, size=(n, 3))
    return pts, (2.0 * radius) ** 3


def _estimate(mask, box_vol):
    n = mask.size
    p = mask.mean()
    return box_vol * p, box_vol * np.sqrt(max(p * (1 - p), 1.0 / n) / n)


def cap_volume(h, t, n=400_000, rng=None):
    """Volume of {x in B(0,t) : |x - v| <= |x|} with |v| = 2h."""
    rng = rng or np.random.default_rng(0)
    v = np.array([0.0, 0.0, 2.0 * h])
    # the cap lies in the slab h <= z <= t
    r = np.sqrt(max(t * t - h * h, 0.0))
    pts = np.column_stack([
        rng.uniform(-r, r, n), rng.uniform(-r, r, n), rng.uniform(h, t, n)
    ])
    inside = (np.einsum("ij,ij->i", pts, pts) <= t * t) & (
        np.linalg.norm(pts - v, axis=1) <= np.linalg.norm(pts, axis=1)
    )
    return _estimate(inside, (2 * r) ** 2 * (t - h))


def quoin_volume(v, w, t, n=400_000, rng=None):
    """Volume of C(v,t) meeting C(w,t), on one side of the plane through 0, v, w
    and on the side containing w of the perpendicular plane through 0 and the
    circumcenter of {0, v, w}."""
    rng = rng or np.random.default_rng(0)
    v = np.asarray(v, dtype=float)
    w = np.asarray(w, dtype=float)
    nrm = np.cross(v, w)
    # circumcenter p of {0, v, w}
    a = np.array([v, w, nrm])
    p = np.linalg.solve(a, np.array([v @ v / 2, w @ w / 2, 0.0]))
    m = np.cross(nrm, p)
    if m @ w < 0:
        m = -m
    # bounding box: the lens projects into the wedge with apex p inside the
    # disk of radius t, and its normal extent is at most sqrt(t^2 - b^2)
    b2 = p @ p
    ha2, hb2 = v @ v / 4, w @ w / 4
    reach = max(np.sqrt(max(t * t - ha2, 0)) - np.sqrt(max(b2 - ha2, 0)),
                np.sqrt(max(t * t - hb2, 0)) - np.sqrt(max(b2 - hb2, 0)))
    depth = np.sqrt(max(t * t - b2, 0.0))
    if depth == 0.0 or reach <= 0.0:
        return 0.0, 0.0
    e1 = p / np.linalg.norm(p)
    e2 = nrm / np.linalg.norm(nrm)
    e3 = np.cross(e1, e2)
    u = rng.uniform(-reach, reach, size=(n, 2))
    z = rng.uniform(0.0, depth, size=n)
    pts = p + u[:, :1] * e1 + u[:, 1:] * e3 + z[:, None] * e2
    norms = np.linalg.norm(pts, axis=1)
    inside = (
        (norms <= t)
        & (np.linalg.norm(pts - v, axis=1) <= norms)
        & (np.linalg.norm(pts - w, axis=1) <= norms)
        & (pts @ m >= 0)
    )
    return _estimate(inside, 4 * reach * reach * depth)


def _arcs_cross(p0, p1, a, b):
    """Whether the short great arcs p0[i]->p1[i] and a->b intersect."""
    n1 = np.cross(p0, p1)
    n2 = np.cross(a, b)
    hit = np.zeros(len(p0), dtype=bool)
    q = np.cross(n1, n2)
    for s in (1.0, -1.0):
        x = s * q
        on1 = (np.einsum("ij,ij->i", np.cross(p0, x), n1) > 0) & (
            np.einsum("ij,ij->i", np.cross(x, p1), n1) > 0)
        on2 = (np.cross(a, x) @ n2 > 0) & (np.cross(x, b) @ n2 > 0)
        hit |= on1 & on2
    return hit


def _inside_spherical_polygon(dirs, verts):
    """Membership in the spherical polygon traced counterclockwise (seen from
    outside) through ``verts``, by crossing parity from a reference point just
    to the left of the first edge.  Valid for polygons of any area."""
    a, b = verts[0] / np.linalg.norm(verts[0]), verts[1] / np.linalg.norm(verts[1])
    m = (a + b) / np.linalg.norm(a + b)
    left = np.cross(m, b - a)
    ref = m + 1e-4 * left / np.linalg.norm(left)
    ref /= np.linalg.norm(ref)
    p0 = np.broadcast_to(ref, dirs.shape)
    parity = np.zeros(len(dirs), dtype=bool)
    k = len(verts)
    for i in range(k):
        parity ^= _arcs_cross(p0, dirs, verts[i], verts[(i + 1) % k])
    return ~parity


def face_cell_volume(verts, t, n=400_000, rng=None):
    """Volume of the cone over the face meeting B(0,t) and the Voronoi cell of 0
    with respect to the face vertices."""
    rng = rng or np.random.default_rng(0)
    verts = [np.asarray(v, dtype=float) for v in verts]
    pts, vol = _ball_samples(rng, n, t)
    norms = np.linalg.norm(pts, axis=1)
    ok = norms <= t
    for v in verts:
        ok &= np.linalg.norm(pts - v, axis=1) >= norms
    sel = np.flatnonzero(ok)
    dirs = pts[sel] / np.maximum(norms[sel], 1e-300)[:, None]
    ok[sel] = _inside_spherical_polygon(dirs, verts)
    return _estimate(ok, vol)


def simplex_cell_volume(v1, v2, v3, n=400_000, rng=None):
    """Volume of conv{0, v1, v2, v3} meeting the Voronoi cell of 0."""
    rng = rng or np.random.default_rng(0)
    vs = np.array([v1, v2, v3], dtype=float)
    bary = rng.dirichlet(np.ones(4), size=n)
    pts = bary[:, 1:] @ vs
    norms = np.linalg.norm(pts, axis=1)
    ok = np.ones(n, dtype=bool)
    for v in vs:
        ok &= np.linalg.norm(pts - v, axis=1) >= norms
    tet = abs(np.linalg.det(vs)) / 6.0
    return _estimate(ok, tet)
