"""Packings around the origin: contact graph, hypermap and per-face scores."""

from .graph import (
    CollinearWithOrigin,
    InvalidPacking,
    NotBiconnected,
    NotConnected,
    NotSpherical,
    Packing,
    PackingGraph,
    arcs_cross,
    build_graph,
    format_packing,
    parse_packing,
    read_packing,
    require_biconnected,
    to_hypermap,
)
from .report import (
    DartValues,
    ReportTotals,
    StandardComponentReport,
    component_report,
    face_cycles,
    face_omega,
    feasibility_assignment,
    total_omega,
    totals,
)
from .subcomp import (
    SubFace,
    distinguished_edges,
    is_distinguished,
    is_internal_pair,
    is_stable_pair,
    is_unstable_triple,
    subcomponents,
    winding_contains,
)

__all__ = [name for name in dir() if not name.startswith("_")]
