"""Linear programs with interval data, dual certificates and hypermap relaxations."""

from .hsystem import (
    VARS,
    BranchResult,
    CertificateRejected,
    Constraint,
    ConstraintSyntax,
    GuardedConstraint,
    HypermapSystem,
    NotTame,
    ProofReport,
    VertexScan,
    guard_branch,
    load_constraints,
    prove_infeasible,
    relax_hypermap,
    scan_vertex_types,
    vertex_type_feasible,
    vertex_type_system,
)
from .solve import (
    ExternalSolver,
    SolverAnswer,
    SolverError,
    SolverUnavailable,
    builtin_certificate,
    get_solver,
    maximise,
    solve_external,
)
from .system import (
    CertificateCheck,
    DimensionMismatch,
    DualCertificate,
    LinearSystem,
    SystemFormatError,
    bound_exact,
    check_certificate,
    format_dual,
    format_system,
    parse_dual,
    parse_system,
)

__all__ = [name for name in dir() if not name.startswith("_")]
