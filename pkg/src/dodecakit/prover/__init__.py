"""Interval branch and bound for disjunctions of strict inequalities."""

from .expr import Expr, ExprSyntaxError, call, const, eval_float, eval_interval, parse, var
from .jet import Jet
from .taskfile import TaskFormatError, format_task, parse_task
from .taylor import NotC2OnCell, TaylorBound, eval_taylor, gradient_at, taylor_bound
from .verify import (
    BudgetExhausted,
    Cell,
    CellCertificate,
    Failed,
    ReplayReport,
    Verified,
    VerifyTask,
    ZeroWidthBox,
    box_from_path,
    check_cover,
    read_log,
    replay,
    subdivide,
    verify,
    write_log,
)

__all__ = [name for name in dir() if not name.startswith("_")]
