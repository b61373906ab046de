"""Random admissible configurations shared by several test modules."""

import math

import numpy as np

from dodecakit.geom import eta
from dodecakit.geom.simplex import circumradius_sq6
from dodecakit.ival import constants as K

T = K.t_dod().mid


def icosahedron(radius=2.0):
    g = (1 + 5 ** 0.5) / 2
    raw = [
        (0, 1, g), (0, -1, g), (0, 1, -g), (0, -1, -g),
        (1, g, 0), (-1, g, 0), (1, -g, 0), (-1, -g, 0),
        (g, 0, 1), (-g, 0, 1), (g, 0, -1), (-g, 0, -1),
    ]
    s = radius / math.sqrt(1 + g * g)
    return [tuple(s * c for c in v) for v in raw]


def _frame(z):
    z = z / np.linalg.norm(z)
    a = np.array([1.0, 0, 0]) if abs(z[0]) < 0.9 else np.array([0, 1.0, 0])
    x = np.cross(z, a)
    x /= np.linalg.norm(x)
    return x, np.cross(z, x), z


def random_face(rng, r, tries=100_000):
    """Counterclockwise r-gon whose vertices satisfy the packing-graph face
    conditions: norms in [2, 2t], consecutive distances in [2, 2t], other
    distances above 2t."""
    for _ in range(tries):
        x, y, z = _frame(rng.normal(size=3))
        base = rng.uniform(0, 2 * math.pi)
        phis = base + 2 * math.pi * (np.arange(r) + rng.uniform(-0.12, 0.12, r)) / r
        side = rng.uniform(2.0, 2 * T)
        alpha = math.asin(min(0.999, side / (2 * 2.1 * math.sin(math.pi / r))))
        alphas = alpha * rng.uniform(0.9, 1.1, r)
        rho = rng.uniform(2.0, 2 * T, r)
        pts = [
            rho[i] * (math.sin(alphas[i]) * (math.cos(phis[i]) * x + math.sin(phis[i]) * y)
                      + math.cos(alphas[i]) * z)
            for i in range(r)
        ]
        if face_ok(pts):
            return [tuple(p) for p in pts]
    raise RuntimeError("no admissible face found")


def face_ok(pts):
    r = len(pts)
    for i in range(r):
        if not (2.0 <= np.linalg.norm(pts[i]) <= 2 * T):
            return False
        for j in range(i + 1, r):
            d = np.linalg.norm(np.subtract(pts[i], pts[j]))
            adjacent = j == i + 1 or (i == 0 and j == r - 1)
            if d < 2.0:
                return False
            if adjacent and d > 2 * T:
                return False
            if not adjacent and d <= 2 * T:
                return False
    return True


def simplex_radius(pts):
    v1, v2, v3 = (np.asarray(p) for p in pts)
    x = (v1 @ v1, v2 @ v2, v3 @ v3, np.sum((v2 - v3) ** 2), np.sum((v1 - v3) ** 2),
         np.sum((v1 - v2) ** 2))
    return math.sqrt(circumradius_sq6(*x))


def random_cap_triangle(rng):
    """Triangle face whose simplex circumradius is at least t."""
    while True:
        pts = random_face(rng, 3)
        if simplex_radius(pts) >= T:
            return pts


def random_small_simplex(rng):
    """Points v1, v2, v3 with {0, v1, v2, v3} in the small-circumradius class:
    pairwise distances >= 2, face circumradii <= sqrt 2, circumradius < t."""
    while True:
        y1, y2, y3, y4, y5, y6 = rng.uniform(2.0, 2.3, 6)
        if max(eta(y1, y2, y6), eta(y1, y3, y5), eta(y2, y3, y4)) > math.sqrt(2):
            continue
        pts = points_from_lengths(y1, y2, y3, y4, y5, y6)
        if pts is None or simplex_radius(pts) >= T:
            continue
        x, y, z = _frame(rng.normal(size=3))
        rot = np.column_stack([x, y, z])
        return [tuple(rot @ np.asarray(p)) for p in pts]


def points_from_lengths(y1, y2, y3, y4, y5, y6):
    """v1, v2, v3 with |vi| = yi, |v2 v3| = y4, |v1 v3| = y5, |v1 v2| = y6,
    oriented so that det(v1, v2, v3) > 0.  None if not realizable."""
    v1 = np.array([y1, 0.0, 0.0])
    cx = (y1 * y1 + y2 * y2 - y6 * y6) / (2 * y1)
    s2 = y2 * y2 - cx * cx
    if s2 <= 0:
        return None
    v2 = np.array([cx, math.sqrt(s2), 0.0])
    px = (y1 * y1 + y3 * y3 - y5 * y5) / (2 * y1)
    py = (y3 * y3 - y4 * y4 + np.sum(v2 ** 2) - 2 * px * v2[0]) / (2 * v2[1])
    pz2 = y3 * y3 - px * px - py * py
    if pz2 <= 0:
        return None
    v3 = np.array([px, py, math.sqrt(pz2)])
    return [tuple(v1), tuple(v2), tuple(v3)]


def random_quoin_params(rng):
    """(v, w) in a plane with |v|, |w|, |v - w| in [2, 2t] and eta(0,v,w) < t."""
    while True:
        lv, lw, d = rng.uniform(2.0, 2.45, 3)
        c = (lv * lv + lw * lw - d * d) / (2 * lv * lw)
        if abs(c) >= 1:
            continue
        g = math.acos(c)
        v = np.array([lv, 0.0, 0.0])
        w = np.array([lw * math.cos(g), lw * math.sin(g), 0.0])
        b = eta(lv, lw, d)
        if b < T - 0.01:
            return v, w, b
