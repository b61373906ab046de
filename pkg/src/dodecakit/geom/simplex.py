"""Triangles and tetrahedra described by their edge lengths.

Six-edge functions use the ordering (x1, ..., x6) where x1, x2, x3 are the
(squared) lengths of the edges from vertex 0 to v1, v2, v3, and x4, x5, x6 are
the opposite edges |v2 v3|, |v1 v3|, |v1 v2|.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..ival import DomainViolation
from . import scalar as S


class DegenerateTriangle(DomainViolation):
    pass


class NonRealizable(DomainViolation):
    pass


class DegenerateEdge(DomainViolation):
    pass


@dataclass(frozen=True)
class Triangle:
    x: object
    y: object
    z: object


@dataclass(frozen=True)
class Simplex:
    """Squared edge lengths x_ij of a tetrahedron with vertices 0..3."""

    x01: object
    x02: object
    x03: object
    x12: object
    x13: object
    x23: object

    def ordered(self):
        return (self.x01, self.x02, self.x03, self.x23, self.x13, self.x12)

    @classmethod
    def from_ordered(cls, x1, x2, x3, x4, x5, x6) -> "Simplex":
        return cls(x1, x2, x3, x6, x5, x4)

    @classmethod
    def from_points(cls, p0, p1, p2, p3) -> "Simplex":
        def d2(a, b):
            return sum((ai - bi) ** 2 for ai, bi in zip(a, b))

        return cls(d2(p0, p1), d2(p0, p2), d2(p0, p3), d2(p1, p2), d2(p1, p3), d2(p2, p3))


def heron16(x, y, z):
    """16 * area^2 of the triangle with side lengths x, y, z."""
    return (x + y + z) * (-x + y + z) * (x - y + z) * (x + y - z)


def eta(x, y, z):
    """Circumradius of the triangle with side lengths x, y, z."""
    if isinstance(x, Triangle):
        x, y, z = x.x, x.y, x.z
    h = heron16(x, y, z)
    s = S.sign(h)
    if s is not None and s <= 0:
        raise DegenerateTriangle(f"zero or negative area for sides {x}, {y}, {z}")
    return x * y * z / S.sqrt(h)


def eta2_sq(x, y, z):
    """Squared circumradius from squared side lengths."""
    den = 2 * (x * y + y * z + z * x) - x * x - y * y - z * z
    if S.sign(den) is not None and S.sign(den) <= 0:
        raise DegenerateTriangle("zero area")
    return x * y * z / den


def delta6(x1, x2, x3, x4, x5, x6):
    """Cayley-Menger polynomial: 144 * volume^2 for squared edge lengths."""
    return (
        x1 * x4 * (-x1 + x2 + x3 - x4 + x5 + x6)
        + x2 * x5 * (x1 - x2 + x3 + x4 - x5 + x6)
        + x3 * x6 * (x1 + x2 - x3 + x4 + x5 - x6)
        - x2 * x3 * x4
        - x1 * x3 * x5
        - x1 * x2 * x6
        - x4 * x5 * x6
    )


def delta4(x1, x2, x3, x4, x5, x6):
    """Partial derivative of delta6 with respect to x4."""
    return (
        -x2 * x3
        - x1 * x4
        + x2 * x5
        + x3 * x6
        - x5 * x6
        + x1 * (-x1 + x2 + x3 - x4 + x5 + x6)
    )


def delta_cm(s: Simplex):
    return delta6(*s.ordered())


def tet_vol(s: Simplex):
    d = delta_cm(s)
    if S.sign(d) == -1:
        raise NonRealizable(f"Cayley-Menger determinant {d} < 0")
    return S.sqrt_nonneg(d) / 12


def circumradius_sq6(x1, x2, x3, x4, x5, x6):
    """Squared circumradius of the tetrahedron with squared edges x1..x6."""
    a, b, c = x1 * x4, x2 * x5, x3 * x6
    num = 2 * (a * b + b * c + c * a) - a * a - b * b - c * c
    d = delta6(x1, x2, x3, x4, x5, x6)
    if S.sign(d) is not None and S.sign(d) <= 0:
        raise NonRealizable("degenerate tetrahedron has no circumsphere")
    return num / (4 * d)


def dih6(x1, x2, x3, x4, x5, x6):
    """Dihedral angle of the tetrahedron along the edge {0, v1}."""
    d = delta6(x1, x2, x3, x4, x5, x6)
    if S.sign(d) == -1:
        raise NonRealizable("negative Cayley-Menger determinant")
    d4 = delta4(x1, x2, x3, x4, x5, x6)
    den = S.sqrt_nonneg(4 * x1 * d)
    if S.sign(den) == 0 and S.sign(d4) == 0:
        raise DegenerateEdge("flat simplex with undefined dihedral angle")
    return S.pi_like(S.leader(d, d4)) / 2 + S.atan2_pos(-d4, den)


def dih_simplex(s: Simplex):
    return dih6(*s.ordered())


def azim(s: Simplex):
    """Dihedral angle along the apex edge {0, v1} of the simplex {0, v1, v2, v3}."""
    return dih_simplex(s)


def _sq(y):
    return y * y


def lengths_to_squares(ys):
    return tuple(_sq(y) for y in ys)


def dih_y(y1, y2, y3, y4, y5, y6):
    return dih6(*lengths_to_squares((y1, y2, y3, y4, y5, y6)))


def dihs_y(y1, y2, y3, y4, y5, y6):
    """The three dihedral angles along the edges {0,v1}, {0,v2}, {0,v3}."""
    x = lengths_to_squares((y1, y2, y3, y4, y5, y6))
    x1, x2, x3, x4, x5, x6 = x
    return (
        dih6(x1, x2, x3, x4, x5, x6),
        dih6(x2, x3, x1, x5, x6, x4),
        dih6(x3, x1, x2, x6, x4, x5),
    )


def sol_y(y1, y2, y3, y4, y5, y6):
    """Solid angle at 0 of the simplex, by Girard's formula."""
    a, b, c = dihs_y(y1, y2, y3, y4, y5, y6)
    return a + b + c - S.pi_like(S.leader(a, b, c))
