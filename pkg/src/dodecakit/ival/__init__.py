"""Outward-rounded interval arithmetic and the constants built on it."""

from .atan import atan_enclosure, atan_ratio, pi_interval
from .box import Box
from .constants import CONSTANTS, constant
from .interval import (
    DomainViolation,
    Interval,
    as_interval,
    format_interval,
    isqrt_nonneg,
    parse_interval,
)
from .rounding import RoundingOverflow

__all__ = [
    "Box",
    "CONSTANTS",
    "DomainViolation",
    "Interval",
    "RoundingOverflow",
    "as_interval",
    "atan_enclosure",
    "atan_ratio",
    "constant",
    "format_interval",
    "isqrt_nonneg",
    "parse_interval",
    "pi_interval",
]
