"""Tameness: constant tables, structural conditions and weight feasibility."""

from .conditions import CONDITIONS, TameReport, is_tame
from .tables import (
    B_TABLE,
    D31,
    SQUANDER_TARGET,
    DomainError,
    SuperadditivityReport,
    b_exact,
    b_pq,
    check_superadditivity,
    d_dod,
    d_exact,
    t_const,
    t_exact,
)
from .weights import (
    Constraint,
    FeasibilityResult,
    WeightCheck,
    WeightLPError,
    face_weights,
    is_voronoi_weight,
    node_adjacency,
    total_weight,
    weight_constraints,
    weight_feasible,
)

__all__ = [name for name in dir() if not name.startswith("_")]
