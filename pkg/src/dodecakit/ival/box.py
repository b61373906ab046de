"""Axis-parallel boxes of intervals."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .interval import Interval, format_interval, parse_interval


@dataclass(frozen=True)
class Box:
    sides: tuple[Interval, ...]

    def __post_init__(self):
        object.__setattr__(self, "sides", tuple(self.sides))

    @classmethod
    def from_bounds(cls, bounds) -> "Box":
        return cls(tuple(Interval(float(a), float(b)) for a, b in bounds))

    @property
    def dim(self) -> int:
        return len(self.sides)

    def __len__(self):
        return len(self.sides)

    def __getitem__(self, i) -> Interval:
        return self.sides[i]

    def __iter__(self):
        return iter(self.sides)

    def widths(self) -> list[float]:
        return [s.hi - s.lo for s in self.sides]

    def widest(self) -> int:
        w = self.widths()
        return max(range(len(w)), key=lambda i: (w[i], -i))

    def center(self) -> tuple[float, ...]:
        return tuple(s.mid for s in self.sides)

    def split(self, axis: int | None = None) -> tuple["Box", "Box"]:
        if axis is None:
            axis = self.widest()
        a, b = self.sides[axis].split()
        left = list(self.sides)
        right = list(self.sides)
        left[axis] = a
        right[axis] = b
        return Box(tuple(left)), Box(tuple(right))

    def volume_exact(self) -> Fraction:
        v = Fraction(1)
        for s in self.sides:
            v *= Fraction(s.hi) - Fraction(s.lo)
        return v

    def contains(self, other: "Box") -> bool:
        return all(a.contains(b) for a, b in zip(self.sides, other.sides))

    def to_text(self) -> str:
        return " ".join(format_interval(s) for s in self.sides)

    @classmethod
    def from_text(cls, text: str) -> "Box":
        parts = [p + "]" for p in text.split("]") if p.strip()]
        return cls(tuple(parse_interval(p) for p in parts))
