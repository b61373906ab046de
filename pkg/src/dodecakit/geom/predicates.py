"""Membership predicates for cones, hulls and orientation."""

from __future__ import annotations

import enum

import numpy as np
from scipy.optimize import linprog

from ..ival import DomainViolation
from . import vec


class DegenerateSet(DomainViolation):
    pass


class Orientation(enum.Enum):
    POSITIVE = 1
    ZERO = 0
    NEGATIVE = -1


def in_rcone(x, w, h, apex=(0.0, 0.0, 0.0), tol=1e-12) -> bool:
    """x in rcone(apex, w, h): (x - apex).(w - apex) >= |x - apex| |w - apex| h."""
    a = np.subtract(x, apex)
    b = np.subtract(w, apex)
    if not np.any(b):
        raise DegenerateSet("cone axis has zero length")
    return float(a @ b) >= float(np.linalg.norm(a) * np.linalg.norm(b) * h) - tol


def circumcenter(points):
    """Circumcenter of 4 affinely independent points in R^3."""
    p = np.asarray(points, dtype=float)
    a = 2.0 * (p[1:] - p[0])
    b = np.sum(p[1:] ** 2, axis=1) - np.sum(p[0] ** 2)
    if abs(np.linalg.det(a)) < 1e-14:
        raise DegenerateSet("points are coplanar")
    return np.linalg.solve(a, b)


def orientation(v1, others, tol=1e-12) -> Orientation:
    """Side of the plane through ``others`` (three points) on which v1 and the
    circumcenter of {v1} + others lie: same side, on it, or opposite sides."""
    v2, v3, v4 = (np.asarray(o, dtype=float) for o in others)
    c = circumcenter([v1, v2, v3, v4])
    n = np.cross(v3 - v2, v4 - v2)
    s1 = float(n @ (np.asarray(v1, dtype=float) - v2))
    s2 = float(n @ (c - v2))
    scale = float(np.linalg.norm(n)) * max(1.0, float(np.linalg.norm(c - v2)))
    if abs(s2) <= tol * scale:
        return Orientation.ZERO
    return Orientation.POSITIVE if (s1 > 0) == (s2 > 0) else Orientation.NEGATIVE


def _nonneg_combination(x, pts, affine: bool, tol: float) -> bool:
    pts = np.asarray(pts, dtype=float)
    a_eq = pts.T
    b_eq = np.asarray(x, dtype=float)
    if affine:
        a_eq = np.vstack([a_eq, np.ones(len(pts))])
        b_eq = np.append(b_eq, 1.0)
    # minimise the l1 residual |A t - b| over t >= 0
    m, n = a_eq.shape
    c = np.concatenate([np.zeros(n), np.ones(2 * m)])
    a = np.hstack([a_eq, np.eye(m), -np.eye(m)])
    res = linprog(c, A_eq=a, b_eq=b_eq, bounds=[(0, None)] * (n + 2 * m), method="highs")
    return res.status == 0 and res.fun <= tol * max(1.0, float(np.abs(b_eq).max()))


def in_aff_plus(x, pts, tol=1e-9) -> bool:
    """x in aff_+(0, S): a nonnegative combination of the points of S."""
    return _nonneg_combination(x, pts, affine=False, tol=tol)


def in_conv(x, pts, tol=1e-9) -> bool:
    return _nonneg_combination(x, pts, affine=True, tol=tol)


def centroid(pts):
    return tuple(np.mean(np.asarray(pts, dtype=float), axis=0))
