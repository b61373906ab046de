"""Combinatorial hypermaps: darts, orbits, planarity, mirrors, isomorphism."""

from .canon import canonical_form, is_chiral, is_isomorphic
from .facelist import format_face_list, from_face_list, parse_face_list, read_face_lists, to_face_list
from .hypermap import (
    Hypermap,
    InconsistentFaceList,
    InvalidHypermap,
    NodeType,
    cycles,
    disjoint_union,
    face_size_of,
    inverse,
    is_connected,
    is_involutive,
    is_planar,
    mirror,
    node_type,
    orbits,
    relabel,
)

__all__ = [name for name in dir() if not name.startswith("_")]
