"""Geometry of truncated Voronoi cells, generic over the scalar kind."""

from .caps import (
    SOLID,
    VOLUME,
    HOutOfRange,
    LambdaPair,
    a_fun,
    cap_sol,
    cap_vol,
    cone_disk_vol,
    phi,
    quo,
)
from .cells import (
    FaceCycle,
    PreconditionRegime,
    RegimeMismatch,
    azim_at,
    azims,
    mu_face,
    mu_simplex_y,
    omega_any,
    omega_face,
    omega_inex_y,
    omega_rogers_y,
    omega_simplex_y,
    omega_triangle,
    sol_girard,
    sol_y,
)
from .predicates import Orientation, in_aff_plus, in_conv, in_rcone, orientation
from .scalar import NotSmoothOnCell, RegimeUndecided
from .simplex import (
    DegenerateEdge,
    DegenerateTriangle,
    NonRealizable,
    Simplex,
    Triangle,
    azim,
    delta6,
    delta_cm,
    dih6,
    dih_y,
    eta,
    tet_vol,
)

__all__ = [name for name in dir() if not name.startswith("_")]
